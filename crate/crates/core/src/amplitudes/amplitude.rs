//! Color-ordered partial amplitudes `H¹(k₁) ⊗ … ⊗ H¹(k_n) → H²(Σk)`.

use serde::{Deserialize, Serialize};

use super::trees::{numeric, plane_wave, Machine};
use crate::error::{Result, YmError};
use crate::exact_arith::GR;
use crate::ym_complex::{homology_at, Homology, Momentum4, DIM};

/// An on-shell leg: a null momentum and coordinates of its class in `H¹`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExternalLeg {
    pub momentum: Momentum4,
    pub class: Vec<GR>,
}

impl ExternalLeg {
    /// The `j`-th basis class of `H¹(k)`.
    pub fn basis(momentum: Momentum4, j: usize) -> Self {
        let mut class = vec![GR::zero(); 2];
        class[j] = GR::one();
        Self { momentum, class }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Amplitude {
    pub n: usize,
    pub total_momentum: Momentum4,
    /// The tree sum before projection, a 16-vector.
    pub tree_sum: Vec<GR>,
    /// `d` of the tree sum vanishes.
    pub closed: bool,
    /// Coordinates in `H²(Σk)`.
    pub value: Vec<GR>,
}

fn total(ks: &[&Momentum4]) -> Momentum4 {
    ks.iter().fold(Momentum4::ints([0; 4]), |a, k| a.add(k))
}

/// The representatives `i(class)` of the legs.
pub fn leg_waves(legs: &[ExternalLeg]) -> Result<Vec<crate::bv_infinity::Wave>> {
    let t = crate::ym_complex::StructureTables::get();
    legs.iter()
        .map(|l| {
            if l.momentum.is_zero() {
                return Err(YmError::ZeroMomentum);
            }
            if !l.momentum.is_null() {
                return Err(YmError::NotNull);
            }
            let hom = homology_at(t, &l.momentum)?;
            if l.class.len() != hom.dims[1] {
                return Err(YmError::Invalid(format!("class has {} coordinates, H¹ has {}", l.class.len(), hom.dims[1])));
            }
            Ok(plane_wave(&hom.include(1, &l.class), &l.momentum, 1))
        })
        .collect()
}

/// Internal lines of the planar trees: proper contiguous ranges of at least
/// two legs must be off-shell.
pub fn check_planar_kinematics(ks: &[&Momentum4]) -> Result<()> {
    let n = ks.len();
    for a in 0..n {
        for b in a + 2..=n {
            if b - a < n && total(&ks[a..b]).is_null() {
                return Err(YmError::DegenerateKinematics);
            }
        }
    }
    Ok(())
}

/// `M_n = p ∘ Σ_{planar cubic trees} ∘ i^{⊗n}` with gca products at
/// vertices and `h♯` on internal lines. Legs are in degree 1, so no signs
/// arise; the output momentum must be null and nonzero.
pub fn partial_amplitude(m: &Machine<'_>, legs: &[ExternalLeg]) -> Result<Amplitude> {
    let n = legs.len();
    if n < 2 {
        return Err(YmError::Arity(n));
    }
    let ks: Vec<&Momentum4> = legs.iter().map(|l| &l.momentum).collect();
    let big = total(&ks);
    if big.is_zero() {
        return Err(YmError::ZeroMomentum);
    }
    if !big.is_null() {
        return Err(YmError::NotNull);
    }
    check_planar_kinematics(&ks)?;
    let xs = leg_waves(legs)?;
    let sum = m.p(&xs)?;
    let tree_sum = numeric(&sum).expect("numeric momenta");
    let closed = numeric(&m.d(&sum)).expect("numeric momenta").iter().all(GR::is_zero);
    let out: Homology = homology_at(m.t, &big)?;
    Ok(Amplitude { n, total_momentum: big, value: out.project(2, &tree_sum), tree_sum, closed })
}

/// `p(F(i x₁, …, i x_n))` for any multilinear tree map `F` landing in
/// degree 2.
pub fn on_homology(
    m: &Machine<'_>,
    legs: &[ExternalLeg],
    f: impl Fn(&[crate::bv_infinity::Wave]) -> Result<crate::bv_infinity::Wave>,
) -> Result<Vec<GR>> {
    let ks: Vec<&Momentum4> = legs.iter().map(|l| &l.momentum).collect();
    let big = total(&ks);
    let xs = leg_waves(legs)?;
    let v = numeric(&f(&xs)?).expect("numeric momenta");
    debug_assert_eq!(v.len(), DIM);
    Ok(homology_at(m.t, &big)?.project(2, &v))
}
