//! Cyclotomic coset leaders modulo q^m + 1, enumerated directly and
//! decided one residue at a time by the closed-form criterion.

use antibch::cosets::{is_leader_closed_form, largest_leaders_m2, leaders_brute_force};

pub fn main() -> antibch::Result<()> {
    let report = leaders_brute_force(8, 2, 1 << 20)?;
    println!("q = 8, m = 2, n = {}: {} cosets", report.n, report.leaders.len());
    println!("leaders {:?}", report.leaders);

    let mut disagreements = 0;
    for a in 0..report.n {
        let verdict = is_leader_closed_form(8, 2, a)?;
        if verdict.is_leader != report.is_leader(a) {
            disagreements += 1;
        }
    }
    println!("closed form disagrees on {disagreements} residues");

    for q in [7, 8, 9] {
        println!("four largest leaders for q = {q}, m = 2: {:?}", largest_leaders_m2(q)?);
    }
    Ok(())
}
