//! Parse weights from JSON, inspect regularity tags, and expand Taylor data.
//!
//! Run with `cargo run --example weights`.

use wro::weights::{parse_weight, taylor_coefficients, WeightDoc};

fn main() -> wro::Result<()> {
    let docs = [
        r#"{"type":"poly","coeffs":[[-2,0],[1,0]]}"#,
        r#"{"type":"rational","num":[[1,0]],"den":[[3,0],[-1,0]]}"#,
        r#"{"type":"taylor","coeffs":[[1,0],[0.5,0],[0.25,0]],"tail_bound":0.05}"#,
    ];
    for doc in docs {
        let w = parse_weight(doc)?;
        let tags: Vec<_> = w.tags().iter().map(|t| t.as_str()).collect();
        println!("{doc}");
        println!("  rational: {}  sup bound: {:.4}", w.is_rational(), w.sup_bound());
        println!("  tags: {}", tags.join(", "));
        if w.is_rational() {
            let c = taylor_coefficients(&w, 5)?;
            let shown: Vec<String> = c.iter().map(|z| format!("{:.4}", z.re)).collect();
            println!("  first Taylor coefficients: {}", shown.join(" "));
        }
        // canonical form, as echoed into reports
        println!("  canonical: {}", serde_json::to_string(&WeightDoc::from_weight(&w)).unwrap());
    }

    match parse_weight(r#"{"type":"poly","coeffs":[[1,0],["x",0]]}"#) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
