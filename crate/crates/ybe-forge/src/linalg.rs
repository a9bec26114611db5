//! Exact linear algebra over `Rat`: sparse row reduction, nullspaces, inverses,
//! and incrementally built subspaces in reduced echelon form.

use std::collections::BTreeMap;

use crate::scalars::Rat;
use crate::Error;

/// Sparse reduced row echelon form, built one equation at a time.
///
/// Pivoting is deterministic: the pivot of a new row is its first nonzero column
/// after reduction, and rows are processed in insertion order.
#[derive(Clone, Debug, Default)]
pub struct SparseRref {
    ncols: usize,
    // pivot column -> fully reduced row with a 1 at the pivot
    rows: BTreeMap<usize, BTreeMap<usize, Rat>>,
}

impl SparseRref {
    pub fn new(ncols: usize) -> SparseRref {
        SparseRref { ncols, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds an equation; returns `true` if it increased the rank.
    pub fn push(&mut self, eq: impl IntoIterator<Item = (usize, Rat)>) -> bool {
        let mut row: BTreeMap<usize, Rat> = BTreeMap::new();
        for (c, v) in eq {
            assert!(c < self.ncols, "column {c} out of range");
            if v.is_zero() {
                continue;
            }
            let e = row.entry(c).or_insert_with(Rat::zero);
            *e += &v;
            if e.is_zero() {
                row.remove(&c);
            }
        }
        let pivots: Vec<usize> = row.keys().copied().filter(|c| self.rows.contains_key(c)).collect();
        for p in pivots {
            let Some(f) = row.get(&p).cloned() else { continue };
            for (c, v) in &self.rows[&p] {
                let e = row.entry(*c).or_insert_with(Rat::zero);
                *e -= &(&f * v);
                if e.is_zero() {
                    row.remove(c);
                }
            }
        }
        let Some((&pc, pv)) = row.iter().next() else { return false };
        let inv = pv.recip();
        for v in row.values_mut() {
            *v *= &inv;
        }
        for other in self.rows.values_mut() {
            if let Some(f) = other.get(&pc).cloned() {
                for (c, v) in &row {
                    let e = other.entry(*c).or_insert_with(Rat::zero);
                    *e -= &(&f * v);
                    if e.is_zero() {
                        other.remove(c);
                    }
                }
            }
        }
        self.rows.insert(pc, row);
        true
    }

    /// Basis of the solution space of the accumulated homogeneous system,
    /// one vector per free column in increasing column order.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.rows.contains_key(c)).collect();
        let mut out: Vec<Vec<Rat>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.ncols];
                v[f] = Rat::one();
                v
            })
            .collect();
        let index: BTreeMap<usize, usize> = free.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        for (&p, row) in &self.rows {
            for (c, v) in row {
                if let Some(&i) = index.get(c) {
                    out[i][p] = -v;
                }
            }
        }
        out
    }
}

pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut r = SparseRref::new(ncols);
    for row in rows {
        r.push(row.iter().cloned().enumerate());
    }
    r.nullspace()
}

pub fn rank(rows: &[Vec<Rat>], ncols: usize) -> usize {
    let mut r = SparseRref::new(ncols);
    for row in rows {
        r.push(row.iter().cloned().enumerate());
    }
    r.rank()
}

/// Inverse of a square dense matrix by Gauss-Jordan elimination.
pub fn inverse(m: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>, Error> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "inverse of a non-square matrix");
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Degenerate("singular matrix".into()))?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        let prow = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += &(x * y);
        }
    }
    s
}

pub fn axpy(y: &mut [Rat], a: &Rat, x: &[Rat]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += &(a * xi);
        }
    }
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Rat::is_zero)
}

/// Scales `v` so its first nonzero coordinate is 1.
pub fn canonicalize(v: &mut [Rat]) {
    if let Some(p) = v.iter().find(|x| !x.is_zero()).cloned() {
        let inv = p.recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
    }
}

/// A subspace in fully reduced echelon form. Each basis vector carries a partner
/// vector transformed by the same row operations, so a linear map defined on a
/// spanning set can be read off consistently (used for intertwiners).
#[derive(Clone, Debug)]
pub struct Subspace {
    dim: usize,
    basis: Vec<Vec<Rat>>,
    partners: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(dim: usize) -> Subspace {
        Subspace { dim, basis: vec![], partners: vec![], pivots: vec![] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn partners(&self) -> &[Vec<Rat>] {
        &self.partners
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` (and its partner) modulo the subspace in place.
    pub fn reduce(&self, v: &mut [Rat], mut partner: Option<&mut [Rat]>) {
        for (j, &p) in self.pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            axpy(v, &-&c, &self.basis[j]);
            if let Some(w) = partner.as_deref_mut() {
                axpy(w, &-&c, &self.partners[j]);
            }
        }
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w, None);
        is_zero_vec(&w)
    }

    /// Coordinates with respect to the echelon basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        self.contains(v).then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn insert(&mut self, v: Vec<Rat>) -> bool {
        self.insert_pair(v, Vec::new())
    }

    /// Inserts `v` with partner `w`; returns `false` if `v` was already in the span.
    pub fn insert_pair(&mut self, mut v: Vec<Rat>, mut w: Vec<Rat>) -> bool {
        let has_partner = !w.is_empty();
        self.reduce(&mut v, has_partner.then_some(w.as_mut_slice()));
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for x in w.iter_mut() {
            *x *= &inv;
        }
        for j in 0..self.basis.len() {
            let c = self.basis[j][p].clone();
            if !c.is_zero() {
                axpy(&mut self.basis[j], &-&c, &v);
                if has_partner {
                    axpy(&mut self.partners[j], &-&c, &w);
                }
            }
        }
        self.basis.push(v);
        self.partners.push(w);
        self.pivots.push(p);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rat {
        Rat::int(v)
    }

    #[test]
    fn nullspace_small() {
        let rows = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)]];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(dot(&rows[0], v).is_zero());
        }
        assert_eq!(rank(&rows, 3), 1);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = vec![vec![r(2), r(1)], vec![r(1), r(1)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![r(1), r(-1)], vec![r(-1), r(2)]]);
        assert!(inverse(&[vec![r(1), r(1)], vec![r(1), r(1)]]).is_err());
    }

    #[test]
    fn subspace_partner_tracks_map() {
        // partner map is v -> 2v
        let mut s = Subspace::new(3);
        assert!(s.insert_pair(vec![r(1), r(1), r(0)], vec![r(2), r(2), r(0)]));
        assert!(s.insert_pair(vec![r(0), r(1), r(1)], vec![r(0), r(2), r(2)]));
        assert!(!s.insert_pair(vec![r(1), r(2), r(1)], vec![r(2), r(4), r(2)]));
        for (b, p) in s.basis().iter().zip(s.partners()) {
            let twice: Vec<Rat> = b.iter().map(|x| x * &r(2)).collect();
            assert_eq!(&twice, p);
        }
        assert_eq!(s.coords(&[r(1), r(2), r(1)]).unwrap().len(), 2);
    }
}
