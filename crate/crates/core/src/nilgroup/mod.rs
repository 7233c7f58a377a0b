//! Free nilpotent groups in Mal'cev coordinates and the nilcharacters built
//! from them.

pub mod free2;
pub mod free3;
mod free3_law;
pub mod symbolic;

use serde::{Deserialize, Serialize};

pub use free2::{
    inverse2, mul2, nilchar2, nilchar2_bracket_form, nilchar2_closed_form, reduce2, Malcev2, PolySeq2,
};
pub use free3::{
    f312_closed_form, f312_linear, f312_orbit, inverse3, mul3, power3, power3_closed_form, reduce3,
    Malcev3,
};

use crate::error::{Error, Result};
use crate::real::{Exact, Real};

fn default_coord3() -> String {
    "312".to_string()
}

/// A polynomial sequence together with the coordinate read off after
/// reduction to the fundamental domain. The phase is that coordinate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "group", rename_all = "snake_case")]
pub enum NilSeqSpec {
    /// `g(n)` from a `PolySeq2`, coordinate `[ip, i]`.
    Free2 { seq: PolySeq2, coord: [usize; 2] },
    /// Linear orbit `g^n` in the free 2-step group on `k` generators.
    Free2Orbit { k: usize, g: Vec<Exact>, coord: [usize; 2] },
    /// Linear orbit `g^n` in the free 3-step group.
    Free3Orbit {
        g: Vec<Exact>,
        #[serde(default = "default_coord3")]
        coord: String,
    },
    /// `g(n) = e_1^{alpha n} e_2^{beta n} e_3^{gamma n}`.
    Free3Linear {
        alpha: Exact,
        beta: Exact,
        gamma: Exact,
        #[serde(default = "default_coord3")]
        coord: String,
    },
}

impl NilSeqSpec {
    pub fn validate(&self) -> Result<()> {
        let check2 = |k: usize, c: &[usize; 2]| {
            if !(1 <= c[1] && c[1] < c[0] && c[0] <= k) {
                return Err(Error::param("coord", format!("need 1 <= i < i' <= {k}, got {c:?}")));
            }
            Ok(())
        };
        match self {
            NilSeqSpec::Free2 { seq, coord } => {
                seq.validate()?;
                check2(seq.k(), coord)
            }
            NilSeqSpec::Free2Orbit { k, g, coord } => {
                Malcev2::new(*k, g.clone())?;
                check2(*k, coord)
            }
            NilSeqSpec::Free3Orbit { g, coord } => {
                free3::parse_coords(g)?;
                coord3(coord).map(|_| ())
            }
            NilSeqSpec::Free3Linear { coord, .. } => coord3(coord).map(|_| ()),
        }
    }

    /// Phase in cycles at `n`, in `[0, 1)`.
    pub fn phase<R: Real>(&self, n: i64) -> Result<R> {
        Ok(match self {
            NilSeqSpec::Free2 { seq, coord } => nilchar2(seq, coord[0], coord[1], n),
            NilSeqSpec::Free2Orbit { k, g, coord } => {
                let g: Malcev2<R> = Malcev2::new(*k, g.iter().map(R::from_exact).collect())?;
                g.pow(n).reduce().0.get(coord[0], coord[1]).clone()
            }
            NilSeqSpec::Free3Orbit { g, coord } => {
                let g = free3::parse_coords(g)?;
                let g: Malcev3<R> = Malcev3::new(std::array::from_fn(|i| R::from_exact(&g.t[i])));
                g.pow(n).reduce().0.t[coord3(coord)?].clone()
            }
            NilSeqSpec::Free3Linear { alpha, beta, gamma, coord } => {
                let nn = R::from_i64(n);
                let g = Malcev3::horizontal(
                    R::from_exact(alpha) * nn.clone(),
                    R::from_exact(beta) * nn.clone(),
                    R::from_exact(gamma) * nn,
                );
                g.reduce().0.t[coord3(coord)?].clone()
            }
        })
    }
}

fn coord3(name: &str) -> Result<usize> {
    free3::coord_index(name).ok_or_else(|| Error::param("coord", format!("unknown free3 coordinate {name:?}")))
}
