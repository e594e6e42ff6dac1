//! Invariants of the Seifert bundle over the blown-up plane with branch
//! multiplicities p, p^2, ..., p^12: second homology, the Chern class, the
//! residues a1 must avoid, and the spin type.
//!
//! cargo run --example seifert_invariants [p]

use num_bigint::BigInt;

use kcontact_cert::seifert::{
    admissible_a1, characteristic_vector, chern_coefficients, seifert_homology, spin_class,
    torsion_via_smith, SeifertData,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(3);

    let curves: Vec<(i64, BigInt)> = (1..=12u32)
        .map(|i| (if i == 12 { 3 } else { 1 }, BigInt::from(p).pow(i)))
        .collect();
    let h2 = seifert_homology(11, &curves)?;
    println!("H2 = {h2}");
    println!("torsion by Smith form: {}", torsion_via_smith(&curves));

    let a2 = 1;
    let residues = admissible_a1(p, a2)?;
    println!("p^2 a2 + 1 = {} = {:?}", residues.n, residues.primes);
    for (&(q, _), alpha) in residues.primes.iter().zip(&residues.residues) {
        println!("  a1 must avoid {alpha} mod {q}");
    }
    let a1 = (0..)
        .find(|&t| !residues.is_forbidden(t))
        .expect("some residue is allowed");
    let mut a = vec![0i64; 12];
    a[0] = a1;
    a[1] = a2;

    let data = SeifertData::standard(p, a.clone())?;
    let c1 = chern_coefficients(&data)?;
    println!("a = {a:?}");
    println!("c1 coefficients primitive: {}", c1.is_primitive()?);

    let lattice = data.curve_lattice();
    let w2 = characteristic_vector(lattice.gram()).expect("odd unimodular lattices have one");
    let spin = spin_class(&data, &w2)?;
    println!("spin: {} (kernel dimension {})", spin.spin, spin.kernel_dim);
    Ok(())
}
