use serde::{Deserialize, Serialize};

use super::fiber::{eval_matrix, Momentum4};
use super::homotopy::PolyMat;
use super::tables::{StructureTables, DIM};
use crate::error::{Result, YmError};
use crate::exact_arith::dense::{self, Mat};
use crate::exact_arith::GR;

/// Plane-wave homology with chosen representatives.
#[derive(Clone, Debug)]
pub struct Homology {
    pub k: Momentum4,
    /// Dimensions in unshifted degrees 0..=3.
    pub dims: [usize; 4],
    /// `incl[p]`: representatives as 16-vectors.
    pub incl: [Vec<Vec<GR>>; 4],
    /// `proj[p]`: covectors on the 16-dim fiber with `proj∘incl = 1` and
    /// `proj∘d = 0`.
    pub proj: [Vec<Vec<GR>>; 4],
}

impl Homology {
    /// Coordinates of `v` in `H^p`.
    pub fn project(&self, p: usize, v: &[GR]) -> Vec<GR> {
        dense::apply(&self.proj[p], v)
    }

    pub fn include(&self, p: usize, coords: &[GR]) -> Vec<GR> {
        let mut out = vec![GR::zero(); DIM];
        for (c, col) in coords.iter().zip(&self.incl[p]) {
            for (o, x) in out.iter_mut().zip(col) {
                *o += &(c * x);
            }
        }
        out
    }
}

fn block(m: &Mat, rows: &[usize], cols: &[usize]) -> Mat {
    rows.iter().map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect()).collect()
}

fn embed(v: &[GR], idx: &[usize]) -> Vec<GR> {
    let mut out = vec![GR::zero(); DIM];
    for (x, &i) in v.iter().zip(idx) {
        out[i] = x.clone();
    }
    out
}

/// Numeric differential at `k`.
pub fn d_at(t: &StructureTables, k: &Momentum4) -> Mat {
    eval_matrix(&t.dmatrix(&k.as_poly()), k).expect("dmat is polynomial in k only")
}

pub fn homology_at(t: &StructureTables, k: &Momentum4) -> Result<Homology> {
    if k.is_zero() {
        return Err(YmError::ZeroMomentum);
    }
    let d = d_at(t, k);
    let idx: Vec<Vec<usize>> = (0..4).map(|p| t.of_degree(p)).collect();
    let mut dims = [0; 4];
    let mut incl: [Vec<Vec<GR>>; 4] = Default::default();
    let mut proj: [Vec<Vec<GR>>; 4] = Default::default();
    for p in 0..4 {
        let n = idx[p].len();
        let ker = if p < 3 {
            dense::kernel(&block(&d, &idx[p + 1], &idx[p]), n)
        } else {
            (0..n).map(|i| (0..n).map(|j| if i == j { GR::one() } else { GR::zero() }).collect()).collect()
        };
        let im: Vec<Vec<GR>> = if p > 0 {
            let b = block(&d, &idx[p], &idx[p - 1]);
            let mut w = b.clone();
            let piv = dense::rref(&mut w);
            let cols = dense::columns(&b, idx[p - 1].len());
            piv.into_iter().map(|c| cols[c].clone()).collect()
        } else {
            Vec::new()
        };
        let reps: Vec<Vec<GR>> = dense::extend_basis(&im, &ker, n).into_iter().map(|i| ker[i].clone()).collect();
        let mut sofar = im.clone();
        sofar.extend(reps.iter().cloned());
        let std: Vec<Vec<GR>> = dense::identity(n);
        let comp: Vec<Vec<GR>> = dense::extend_basis(&sofar, &std, n).into_iter().map(|i| std[i].clone()).collect();
        sofar.extend(comp);
        let binv = dense::inverse(&dense::from_columns(&sofar, n)).expect("basis");
        dims[p] = reps.len();
        incl[p] = reps.iter().map(|v| embed(v, &idx[p])).collect();
        proj[p] = (0..reps.len()).map(|r| embed(&binv[im.len() + r], &idx[p])).collect();
    }
    Ok(Homology { k: k.clone(), dims, incl, proj })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct KihReport {
    pub ker_d1_in_ker_h1: bool,
    pub im_h3_in_im_d1: bool,
    pub iso_rank: usize,
    /// `None` when only one homotopy was supplied.
    pub independent_of_h: Option<bool>,
}

impl KihReport {
    pub fn all_pass(&self) -> bool {
        self.ker_d1_in_ker_h1 && self.im_h3_in_im_d1 && self.iso_rank == 2 && self.independent_of_h != Some(false)
    }
}

/// Matrix of the map `H² → H¹` induced by `h`.
pub fn induced_iso(hom: &Homology, hk: &Mat) -> Mat {
    hom.incl[2].iter().map(|v| hom.project(1, &dense::apply(hk, v))).collect::<Vec<_>>()
}

/// Inclusions `ker d¹ ⊆ ker h¹`, `im h³ ⊆ im d¹` and the induced
/// isomorphism on homology at a null momentum.
pub fn check_kih_and_iso(t: &StructureTables, k: &Momentum4, h: &PolyMat, h2: Option<&PolyMat>) -> Result<KihReport> {
    if k.is_zero() {
        return Err(YmError::ZeroMomentum);
    }
    if !k.is_null() {
        return Err(YmError::NotNull);
    }
    let hom = homology_at(t, k)?;
    let d = d_at(t, k);
    let hk = eval_matrix(h, k)?;
    let (i1, i2, i3) = (t.of_degree(1), t.of_degree(2), t.of_degree(3));
    let ker = dense::kernel(&block(&d, &i2, &i1), i1.len());
    let ker_d1_in_ker_h1 = ker.iter().all(|v| dense::apply(&hk, &embed(v, &i1)).iter().all(|x| x.is_zero()));
    let d1 = block(&d, &i2, &i1);
    let h3 = block(&hk, &i2, &i3);
    let both: Mat = d1.iter().zip(&h3).map(|(a, b)| a.iter().chain(b).cloned().collect()).collect();
    let im_h3_in_im_d1 = dense::rank(&both) == dense::rank(&d1);
    let m = induced_iso(&hom, &hk);
    let iso_rank = dense::rank(&m);
    let independent_of_h = match h2 {
        Some(h2) => Some(induced_iso(&hom, &eval_matrix(h2, k)?) == m),
        None => None,
    };
    Ok(KihReport { ker_d1_in_ker_h1, im_h3_in_im_d1, iso_rank, independent_of_h })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::FindInstanceOptions;
    use crate::ym_complex::homotopy::{alternate_candidates, solve_h};

    #[test]
    fn dims_match_plane_wave_homology() {
        let t = StructureTables::get();
        for k in [[3, 1, 2, 2], [5, 3, 4, 0], [1, 1, 0, 0], [3, 2, 1, 2], [7, 2, 3, 6]] {
            let h = homology_at(t, &Momentum4::ints(k)).unwrap();
            assert_eq!(h.dims, [0, 2, 2, 0], "{k:?}");
            for p in 0..4 {
                for (r, v) in h.incl[p].iter().enumerate() {
                    let c = h.project(p, v);
                    for (s, x) in c.iter().enumerate() {
                        assert_eq!(*x, if r == s { GR::one() } else { GR::zero() });
                    }
                }
            }
        }
        for k in [[1, 0, 0, 0], [0, 1, 0, 0], [2, 1, 1, 1], [1, 2, 3, 4], [3, 0, 0, 1]] {
            assert_eq!(homology_at(t, &Momentum4::ints(k)).unwrap().dims, [0, 0, 0, 0], "{k:?}");
        }
        assert_eq!(homology_at(t, &Momentum4::ints([0; 4])).unwrap_err(), YmError::ZeroMomentum);
    }

    #[test]
    fn kih_and_iso() {
        let t = StructureTables::get();
        let h1 = solve_h(t, &FindInstanceOptions::default()).unwrap();
        let opts = FindInstanceOptions { candidates: alternate_candidates(), ..Default::default() };
        let h2 = solve_h(t, &opts).unwrap();
        assert_ne!(h1.matrix, h2.matrix);
        for k in [[3, 1, 2, 2], [1, 1, 0, 0]] {
            let r = check_kih_and_iso(t, &Momentum4::ints(k), &h1.matrix, Some(&h2.matrix)).unwrap();
            assert!(r.all_pass(), "{r:?}");
        }
        assert_eq!(
            check_kih_and_iso(t, &Momentum4::ints([1, 0, 0, 0]), &h1.matrix, None).unwrap_err(),
            YmError::NotNull
        );
    }
}
