//! The three search engines side by side: exhaustive enumeration, the
//! support search that settles every weight below its stopping point, and
//! seeded information-set decoding.

use antibch::bch::build_code;
use antibch::distance::{exhaustive_distance, isd_search, support_search};

pub fn main() -> antibch::Result<()> {
    let code = build_code(3, 3, 3, 1)?;
    println!("C(3, 28, 3, 1): k = {}", code.dimension);

    let full = exhaustive_distance(&code, 1 << 26)?;
    println!("exhaustive: d = {:?} after {} codewords", full.weight, full.units);

    let support = support_search(&code, 8, 1_000_000_000)?;
    println!("support search: found {:?}, no word below {}, {} units",
        support.found.as_ref().map(|w| w.weight()), support.exhausted_below, support.units);

    let target = full.weight;
    let (hit, iterations) = isd_search(&code, target, 512, 7)?;
    println!("isd with seed 7: {:?} after {iterations} iterations", hit.map(|w| w.support));
    Ok(())
}
