// Generated by `cargo run --example derive_free3_law`. Do not edit.
// Coordinate order: 1 2 3 21 211 31 311 32 322 212 312 213 313 323

use crate::real::Real;

fn p<R: Real>(xs: &[&R]) -> R {
    xs.iter().fold(R::one(), |a, &x| a * x.clone())
}

pub(crate) fn mul_law<R: Real>(t: &[R; 14], u: &[R; 14]) -> [R; 14] {
    [
        // s_1
        u[0].clone()
            + t[0].clone(),
        // s_2
        u[1].clone()
            + t[1].clone(),
        // s_3
        u[2].clone()
            + t[2].clone(),
        // s_21
        u[3].clone()
            + t[3].clone()
            + p(&[&t[1], &u[0]]),
        // s_211
        u[4].clone()
            + t[4].clone()
            + p(&[&t[3], &u[0]])
            + R::ratio(-1, 2) * p(&[&t[1], &u[0]])
            + R::ratio(1, 2) * p(&[&t[1], &u[0], &u[0]]),
        // s_31
        u[5].clone()
            + t[5].clone()
            + p(&[&t[2], &u[0]]),
        // s_311
        u[6].clone()
            + t[6].clone()
            + p(&[&t[5], &u[0]])
            + R::ratio(-1, 2) * p(&[&t[2], &u[0]])
            + R::ratio(1, 2) * p(&[&t[2], &u[0], &u[0]]),
        // s_32
        u[7].clone()
            + t[7].clone()
            + p(&[&t[2], &u[1]]),
        // s_322
        u[8].clone()
            + t[8].clone()
            + p(&[&t[7], &u[1]])
            + R::ratio(-1, 2) * p(&[&t[2], &u[1]])
            + R::ratio(1, 2) * p(&[&t[2], &u[1], &u[1]]),
        // s_212
        u[9].clone()
            + t[9].clone()
            + p(&[&t[3], &u[1]])
            + R::ratio(-1, 2) * p(&[&t[1], &u[0]])
            + p(&[&t[1], &u[0], &u[1]])
            + R::ratio(1, 2) * p(&[&t[1], &t[1], &u[0]]),
        // s_312
        u[10].clone()
            + t[10].clone()
            + p(&[&t[7], &u[0]])
            + p(&[&t[5], &u[1]])
            + p(&[&t[2], &u[0], &u[1]]),
        // s_213
        u[11].clone()
            + t[11].clone()
            + R::from_i64(-1) * p(&[&t[7], &u[0]])
            + p(&[&t[3], &u[2]])
            + p(&[&t[1], &u[0], &u[2]])
            + p(&[&t[1], &t[2], &u[0]]),
        // s_313
        u[12].clone()
            + t[12].clone()
            + p(&[&t[5], &u[2]])
            + R::ratio(-1, 2) * p(&[&t[2], &u[0]])
            + p(&[&t[2], &u[0], &u[2]])
            + R::ratio(1, 2) * p(&[&t[2], &t[2], &u[0]]),
        // s_323
        u[13].clone()
            + t[13].clone()
            + p(&[&t[7], &u[2]])
            + R::ratio(-1, 2) * p(&[&t[2], &u[1]])
            + p(&[&t[2], &u[1], &u[2]])
            + R::ratio(1, 2) * p(&[&t[2], &t[2], &u[1]]),
    ]
}
