//! Cash flows, NPV, IRR and break-even for the built-in base-case model.

use anc_toolkit::econ::{cumulative_flows, evaluate, ModelSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = ModelSpec::base_case();
    let res = evaluate(&spec, false)?;
    let cum = cumulative_flows(&res.cash_flows, spec.discount_rate, false);

    println!("period   cash flow    discounted    cumulative");
    for (t, ((cf, d), c)) in res.cash_flows.iter().zip(&res.discounted_flows).zip(&cum).enumerate() {
        println!("{:>6} {cf:>11.0} {d:>13.2} {c:>13.0}", t + 1);
    }
    println!("NPV at {}% per period: {:.2}", spec.discount_rate * 100.0, res.npv);
    match res.irr {
        Some(r) => println!("IRR: {:.2}% per period", r * 100.0),
        None => println!("IRR: undefined"),
    }
    println!("break-even period: {:?}", res.break_even_period);
    println!("discounted break-even: {:?}", evaluate(&spec, true)?.break_even_period);
    Ok(())
}
