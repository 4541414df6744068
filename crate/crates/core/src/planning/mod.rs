//! Concept selection, market sizing and risk assessment.

mod concept;
mod market;
mod risk;

pub use concept::{concept_score, read_concept_csv, Concept, ConceptMatrix, ConceptScore, Criterion, RATING_RANGE};
pub use market::{market_size_estimate, MarketEstimate, MarketParams};
pub use risk::{
    read_register_csv, risk_score_and_map, Quadrant, RegisterEntry, RiskItem, RiskRating, DEFAULT_THRESHOLD,
    REGISTER_HEADER, SCALE,
};
