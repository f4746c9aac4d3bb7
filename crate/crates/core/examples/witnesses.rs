//! Structured low-weight codewords, each checked against every zero of
//! the code and against the generator polynomial.

use antibch::bch::build_code;
use antibch::distance::{constructive_witnesses, divisible_by_generator, verify_witness};

pub fn main() -> antibch::Result<()> {
    for (q, m, delta, b) in [(4, 3, 5, 1), (2, 9, 9, 0), (2, 10, 3, 0), (3, 7, 3, 0), (8, 2, 4, 1)] {
        let code = build_code(q, m, delta, b)?;
        // the lightest witness of each kind is enough here
        let mut found = constructive_witnesses(&code, code.n);
        found.sort_by_key(|(_, w)| w.weight());
        let Some((rule, w)) = found.into_iter().next() else {
            println!("C({q}, {}, {delta}, {b}): no structured witness", code.n);
            continue;
        };
        verify_witness(&code, &w)?;
        assert!(divisible_by_generator(&code, &w));
        println!("C({q}, {}, {delta}, {b}): {rule} gives weight {} on {:?}", code.n, w.weight(), w.support);
    }
    Ok(())
}
