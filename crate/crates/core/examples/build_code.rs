//! Building codes: defining set, generator, dimension, and the window
//! extensions that make different designed distances give the same code.

use antibch::bch::{build_code, dimension_formula, structural_equalities};

pub fn main() -> antibch::Result<()> {
    let code = build_code(3, 4, 4, 0)?;
    let d = code.descriptor();
    println!("{}", serde_json::to_string_pretty(&d).expect("descriptor serializes"));

    // g(x) h(x) = x^n - 1 over GF(q)
    let h = code.parity_check_polynomial();
    let product = code.generator.mul(&h);
    assert_eq!(product.degree(), Some(code.n as usize));
    println!("deg g = {:?}, deg h = {:?}", code.generator.degree(), h.degree());

    for (q, m, delta, b) in [(3, 4, 4, 0), (2, 6, 5, 1), (5, 3, 7, 1)] {
        let closed = dimension_formula(q, m, delta, b).map(|k| k.to_string());
        let built = build_code(q, m, delta, b)?.dimension;
        println!("C({q}, {}, {delta}, {b}): k = {built}, formula {}", q.pow(m) + 1,
            closed.unwrap_or_else(|e| format!("n/a ({e})")));
    }

    for eq in structural_equalities(3, 3, 4, 0)? {
        println!("(delta, b) = {:?} and {:?} give the same code: {}", eq.left, eq.right, eq.holds);
    }
    Ok(())
}
