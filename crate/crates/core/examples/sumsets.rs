//! Progressions in iterated sumsets, the bilinear iterate, and additive energy.

use gowerslab::additive::{additive_energy, find_lev_progression, find_product_progression, round_to_grid, GridGraph, IntSet, PairSet};
use rand::Rng;

fn main() -> gowerslab::error::Result<()> {
    let mut rng = gowerslab::sample::rng(7);
    let a: Vec<i64> = (1..=200).filter(|_| rng.gen_bool(0.25)).collect();
    let a = IntSet::new(200, a)?;
    let k = (2.0 / a.alpha()).ceil() as usize;
    let r = find_lev_progression(&a, k)?;
    println!("alpha = {:.3}, k = {k}: d = {:?}", r.alpha, r.d);

    let pairs: Vec<(i64, i64)> = (1..=40).flat_map(|x| (1..=40).map(move |y| (x, y))).filter(|_| rng.gen_bool(0.35)).collect();
    let p = PairSet::new(40, pairs)?;
    let k = (128.0 / p.alpha().powi(3)).ceil() as usize;
    let r = find_product_progression(&p, k)?;
    println!("bilinear: alpha = {:.3}, (d, d') = {:?} after {} levels", r.alpha, r.d, r.levels_computed);

    let vals: Vec<f64> = (0..30).map(|_| rng.gen()).collect();
    let (g, rs) = round_to_grid(&vals, 0.1)?;
    let s = GridGraph { modulus: g, points: (0..30).map(|i| (i as i64 % 5, rs[i])).collect() };
    println!("energy of a rounded graph: {}", additive_energy([&s, &s, &s, &s])?);
    Ok(())
}
