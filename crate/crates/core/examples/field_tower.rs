//! The field tower behind a length q^m + 1 code: GF(q) inside GF(q^2m),
//! with β a primitive (q^m + 1)-th root of unity.

use antibch::field::Tower;

pub fn main() -> antibch::Result<()> {
    let tower = Tower::antiprimitive(4, 3)?;
    let (small, big) = (tower.small(), tower.big());
    println!("GF({}) inside GF({}), n = {}", small.order(), big.order(), tower.n());

    let beta = tower.beta();
    println!("beta = {:?}, order {:?}", beta, big.multiplicative_order(beta));
    assert_eq!(big.pow(beta, tower.n()), big.one());

    // β^(q^m) = β^-1, so β + β^-1 is fixed by the degree-m Frobenius
    let qm = 4u64.pow(3);
    assert_eq!(big.pow(beta, qm), big.inv(beta));
    let t = big.add(beta, big.inv(beta));
    println!("beta + 1/beta lies in GF(4^3): {}", big.in_subfield(qm, t)?);

    // GF(4) maps into the big field and back
    let emb = tower.embedding();
    for a in small.elements() {
        assert_eq!(emb.pull_back(emb.map(a)), Some(a));
    }
    println!("embedding round-trips all {} elements of GF(4)", small.order());
    Ok(())
}
