//! Bohr sets, a regular radius, and the smoothed cutoff.

use gowerslab::bohr::{build_bohr, cutoff_decomposition, find_regular, DEFAULT_C_REG};

fn main() -> gowerslab::error::Result<()> {
    let s = [0.1234, 0.377];
    let n = 2000;
    let b = build_bohr(&s, 0.2, n)?;
    println!("|B(S, 0.2)| = {}  first members {:?}", b.len(), &b.members[..b.len().min(8)]);

    let reg = find_regular(&s, 0.1, n, DEFAULT_C_REG, None)?;
    match reg.rho {
        Some(rho) => println!("regular radius {rho:.5} (constant {:.2})", reg.best.constant),
        None => println!("no regular radius in [0.1, 0.2]"),
    }

    let d = cutoff_decomposition(&b, 0.1)?;
    println!("rho' = {:.4}  sum |psi_2| = {:.1} <= {}", d.rho_prime, d.psi2_mass, 0.1 * n as f64);
    println!("Fourier L1 mass of psi_1: {:.2}", d.l1_fourier_mass);
    Ok(())
}
