//! Distance certificates: a verified witness codeword above, named rules
//! below, and an honest interval when the budgets run out.

use antibch::bch::build_code;
use antibch::{certify, Budget};

pub fn main() -> antibch::Result<()> {
    let budget = Budget::default();
    for (q, m, delta, b) in [(4, 2, 2, 1), (9, 2, 32, 0), (3, 6, 3, 1), (2, 10, 3, 0)] {
        let code = build_code(q, m, delta, b)?;
        let cert = certify(&code, &budget);
        let rules: Vec<&str> = cert.lower.rules.iter().map(|r| r.rule.as_str()).collect();
        match cert.distance() {
            Some(d) => println!("C({q}, {}, {delta}, {b}) = [{}, {}, {d}]  lower {rules:?}", code.n, code.n, code.dimension),
            None => println!("C({q}, {}, {delta}, {b}): {} <= d <= {:?}", code.n, cert.lower.value, cert.upper_value()),
        }
    }

    // the full certificate is plain JSON
    let cert = certify(&build_code(3, 2, 3, 0)?, &budget);
    println!("{}", serde_json::to_string_pretty(&cert).expect("certificate serializes"));
    Ok(())
}
