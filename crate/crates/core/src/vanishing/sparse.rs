//! Sparse exact matrices stored by columns, with an echelon rank.

use std::collections::{BTreeMap, HashMap};

use crate::exact_arith::GR;

pub type SparseVec = BTreeMap<usize, GR>;

#[derive(Clone, Debug, Default)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: Vec<SparseVec>,
}

impl SparseMat {
    pub fn new(rows: usize) -> Self {
        Self { rows, cols: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    /// `self · v` for a sparse vector indexed by columns.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in v {
            for (i, x) in &self.cols[*j] {
                add_to(&mut out, *i, &(c * x));
            }
        }
        out
    }

    /// `self · other` is zero.
    pub fn annihilates(&self, other: &SparseMat) -> bool {
        other.cols.iter().all(|c| self.apply(c).is_empty())
    }

    /// Column rank, by incremental echelon reduction; columns are processed
    /// sparsest first to limit fill-in.
    pub fn rank(&self) -> usize {
        let mut order: Vec<usize> = (0..self.ncols()).collect();
        order.sort_by_key(|j| self.cols[*j].len());
        let mut pivots: HashMap<usize, SparseVec> = HashMap::new();
        for j in order {
            let mut v = self.cols[j].clone();
            while let Some((&lead, c)) = v.iter().next() {
                match pivots.get(&lead) {
                    Some(p) => {
                        let f = c.clone();
                        for (i, x) in p {
                            add_to(&mut v, *i, &-(&f * x));
                        }
                    }
                    None => {
                        let inv = c.inv();
                        let v: SparseVec = v.into_iter().map(|(i, x)| (i, &x * &inv)).collect();
                        pivots.insert(lead, v);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }
}

pub fn add_to(v: &mut SparseVec, i: usize, c: &GR) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(i).or_insert_with(GR::zero);
    *e += c;
    if e.is_zero() {
        v.remove(&i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::dense;

    #[test]
    fn rank_agrees_with_dense_elimination() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..30 {
            let (r, c) = (rng.gen_range(1..9), rng.gen_range(1..9));
            let mut dm = dense::zeros(r, c);
            let mut sm = SparseMat::new(r);
            sm.cols = vec![SparseVec::new(); c];
            for i in 0..r {
                for j in 0..c {
                    if rng.gen_bool(0.3) {
                        let x = GR::cint(rng.gen_range(-2..3), rng.gen_range(-1..2));
                        add_to(&mut sm.cols[j], i, &x);
                        dm[i][j] = x;
                    }
                }
            }
            assert_eq!(sm.rank(), dense::rank(&dm));
        }
    }
}
