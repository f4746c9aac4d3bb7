//! Low-weight counts of the Zetterberg code of length p^m + 1.

use antibch::esp::zetterberg_low_weight;

pub fn main() -> antibch::Result<()> {
    for (p, m) in [(2, 3), (2, 4), (2, 5), (2, 6), (3, 3)] {
        let counts = zetterberg_low_weight(p, m, 4, 1 << 30)?;
        println!("p = {p}, m = {m}, n = {}: B_0..B_4 = {counts:?}", p.pow(m) + 1);
    }
    Ok(())
}
