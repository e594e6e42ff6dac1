//! The plane blown up at eleven points: the cubic/dectic basis, its Gram
//! matrix, adjunction genera and a Smith normal form.
//!
//! cargo run --example lattice_basis

use kcontact_cert::lattice::{
    blown_up_plane, canonical_class, curve_basis, gram_of, plane_curve_genus,
    punctured_torus_boundary_abelianization, smith_normal_form, verify_basis, AbelianGroup,
    IntMatrix,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = blown_up_plane(11);
    let k = canonical_class(&x);
    let basis = curve_basis(&x);

    let gram = gram_of(&basis)?;
    println!("Gram matrix of {{c1..c11, d}}:");
    for i in 0..gram.rows() {
        let row: Vec<String> = gram.row(i).iter().map(|v| format!("{v:>3}")).collect();
        println!("  {}", row.join(""));
    }
    let check = verify_basis(&basis)?;
    println!(
        "det of coordinate matrix = {} (basis: {})",
        check.det, check.is_basis
    );

    for (name, c) in [("c1", &basis[0]), ("d", &basis[11])] {
        // adjunction: 2g - 2 = K.C + C^2
        let twice = k.pair(c)? + c.square();
        println!(
            "{name} = {c}: C^2 = {}, K.C = {}, genus = {}",
            c.square(),
            k.pair(c)?,
            (twice + 2u32) / 2u32
        );
    }
    println!(
        "dectic with eleven triple points: genus {}",
        plane_curve_genus(10, &[3; 11])
    );
    println!("K^2 = {}", k.square());

    let m = IntMatrix::from_i64(3, 3, &[2, 4, 4, -6, 6, 12, 10, -4, -16]);
    let snf = smith_normal_form(&m);
    println!(
        "Smith form diagonal of a sample matrix: {:?}",
        snf.factors
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
    );
    println!("cokernel: {}", AbelianGroup::from_presentation(&m, 3));
    println!(
        "boundary of a punctured torus abelianizes to {}",
        punctured_torus_boundary_abelianization()
    );
    Ok(())
}
