//! Symmetric polynomials on the unit circle of GF(q^2): the determinant
//! identity, and the blocks where an elementary symmetric polynomial
//! vanishes.

use antibch::esp::{block_set, divisor_block, esp, esp_all, m_matrix_det, vandermonde_det, UnitCircle};

pub fn main() -> antibch::Result<()> {
    let u = UnitCircle::new(8)?;
    let f = u.field();
    let x = u.elements_of(&[0, 2, 3, 7]);

    let sigma = esp_all(f, &x);
    for (r, s) in sigma.iter().enumerate() {
        assert_eq!(*s, esp(f, &x, r)?);
    }
    println!("sigma of 4 points of U_9: {sigma:?}");

    // det M_{eta,l} * sigma_k^l = sigma_eta * V for k = eta + l points
    let v = vandermonde_det(f, &x)?;
    for (eta, l) in [(2, 2), (3, 1)] {
        let lhs = f.mul(m_matrix_det(f, eta, l, &x)?, f.pow(sigma[4], l as u64));
        let rhs = f.mul(sigma[eta], v);
        assert_eq!(lhs, rhs);
        println!("eta = {eta}, l = {l}: both sides equal {lhs:?}");
    }

    let blocks = block_set(8, 3, 1, 1 << 26)?;
    println!("q = 8, k = 3, l = 1: {} blocks", blocks.blocks.len());

    let blocks = block_set(5, 3, 1, 1 << 26)?;
    println!("q = 5, k = 3, l = 1: {} blocks, first {:?}", blocks.blocks.len(), blocks.blocks.first());
    println!("divisor block for q = 5, eta = 2: {:?}", divisor_block(5, 2)?);
    Ok(())
}
