//! Scale a regional affected population to a world market and estimate profit.

use anc_toolkit::planning::{market_size_estimate, MarketParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = MarketParams {
        world_pop: 7.0e9,
        ref_pop: 318.9e6,
        ref_affected: 480_000.0,
        tolerance: 0.2,
        adoption_share: 0.55,
        unit_price: 300.0,
        unit_cost: 150.0,
        rounding_step: 100_000.0,
    };
    let m = market_size_estimate(&p)?;
    println!("affected           {:>14.0}", m.affected);
    println!("rounded            {:>14.0}", m.affected_rounded);
    println!("profit (rounded)   {:>14.0}", m.profit);
    println!("profit (exact)     {:>14.0}", m.profit_exact);
    Ok(())
}
