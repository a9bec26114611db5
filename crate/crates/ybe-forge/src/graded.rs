//! Z2-graded spaces and row-sparse exact operators with Koszul-signed tensor calculus.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::scalars::Rat;
use crate::Error;

/// Basis parities of a graded space (0 even, 1 odd).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedSpace {
    pub parities: Vec<u8>,
}

impl GradedSpace {
    pub fn new(parities: Vec<u8>) -> GradedSpace {
        assert!(!parities.is_empty(), "graded space must have dimension >= 1");
        GradedSpace { parities }
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    /// Superdimension `(#even, #odd)`.
    pub fn sdim(&self) -> (usize, usize) {
        let odd = self.parities.iter().filter(|p| **p == 1).count();
        (self.dim() - odd, odd)
    }
}

/// Lexicographic tensor basis, left index major.
pub fn tensor_space(a: &GradedSpace, b: &GradedSpace) -> GradedSpace {
    GradedSpace::new(tensor_parities(&a.parities, &b.parities))
}

pub fn tensor_parities(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().flat_map(|x| b.iter().map(move |y| (x + y) % 2)).collect()
}

/// Exact operator between graded spaces, stored row-sparse with sorted columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "MatrixJson", try_from = "MatrixJson")]
pub struct GradedOp {
    pub parity_row: Vec<u8>,
    pub parity_col: Vec<u8>,
    data: Vec<Vec<(usize, Rat)>>,
}

impl GradedOp {
    pub fn zeros(parity_row: &[u8], parity_col: &[u8]) -> GradedOp {
        GradedOp {
            parity_row: parity_row.to_vec(),
            parity_col: parity_col.to_vec(),
            data: vec![Vec::new(); parity_row.len()],
        }
    }

    pub fn identity(p: &[u8]) -> GradedOp {
        Self::diagonal(p, (0..p.len()).map(|_| Rat::one()).collect())
    }

    pub fn diagonal(p: &[u8], d: Vec<Rat>) -> GradedOp {
        let data = d
            .into_iter()
            .enumerate()
            .map(|(i, v)| if v.is_zero() { Vec::new() } else { vec![(i, v)] })
            .collect();
        GradedOp { parity_row: p.to_vec(), parity_col: p.to_vec(), data }
    }

    /// Builds from (row, col, value) triples; repeated positions are summed.
    pub fn from_triples<I>(parity_row: &[u8], parity_col: &[u8], triples: I) -> GradedOp
    where
        I: IntoIterator<Item = (usize, usize, Rat)>,
    {
        let mut rows: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); parity_row.len()];
        for (r, c, v) in triples {
            assert!(c < parity_col.len(), "column {c} out of range");
            rows[r].push((c, v));
        }
        let data = rows.into_iter().map(normalize_row).collect();
        GradedOp { parity_row: parity_row.to_vec(), parity_col: parity_col.to_vec(), data }
    }

    pub fn from_rows(parity_row: &[u8], parity_col: &[u8], rows: Vec<Vec<(usize, Rat)>>) -> GradedOp {
        assert_eq!(rows.len(), parity_row.len());
        let data = rows.into_iter().map(normalize_row).collect();
        GradedOp { parity_row: parity_row.to_vec(), parity_col: parity_col.to_vec(), data }
    }

    pub fn rows(&self) -> usize {
        self.parity_row.len()
    }

    pub fn cols(&self) -> usize {
        self.parity_col.len()
    }

    pub fn row(&self, r: usize) -> &[(usize, Rat)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(i) => self.data[r][i].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, &Rat)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    /// Homogeneous parity, `None` for mixed (the zero operator reports 0).
    pub fn parity(&self) -> Option<u8> {
        let mut p = None;
        for (r, c, _) in self.triples() {
            let e = (self.parity_row[r] + self.parity_col[c]) % 2;
            match p {
                None => p = Some(e),
                Some(x) if x != e => return None,
                _ => {}
            }
        }
        Some(p.unwrap_or(0))
    }

    pub fn scale(&self, s: &Rat) -> GradedOp {
        if s.is_zero() {
            return GradedOp::zeros(&self.parity_row, &self.parity_col);
        }
        let data = self
            .data
            .iter()
            .map(|row| row.iter().map(|(c, v)| (*c, v * s)).collect())
            .collect();
        GradedOp { parity_row: self.parity_row.clone(), parity_col: self.parity_col.clone(), data }
    }

    pub fn neg(&self) -> GradedOp {
        self.scale(&Rat::int(-1))
    }

    pub fn add(&self, o: &GradedOp) -> GradedOp {
        self.lincomb(&Rat::one(), o, &Rat::one())
    }

    pub fn sub(&self, o: &GradedOp) -> GradedOp {
        self.lincomb(&Rat::one(), o, &Rat::int(-1))
    }

    /// `a*self + b*o`.
    pub fn lincomb(&self, a: &Rat, o: &GradedOp, b: &Rat) -> GradedOp {
        assert_eq!((self.rows(), self.cols()), (o.rows(), o.cols()), "shape mismatch in sum");
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(x, y)| merge_rows(x, a, y, b))
            .collect();
        GradedOp { parity_row: self.parity_row.clone(), parity_col: self.parity_col.clone(), data }
    }

    pub fn mul(&self, o: &GradedOp) -> GradedOp {
        assert_eq!(self.cols(), o.rows(), "shape mismatch in product");
        let ncols = o.cols();
        let data = self
            .data
            .par_iter()
            .map(|row| {
                let mut acc: Vec<Option<Rat>> = vec![None; ncols];
                let mut touched = Vec::new();
                for (k, a) in row {
                    for (c, b) in &o.data[*k] {
                        let v = a * b;
                        match &mut acc[*c] {
                            Some(x) => *x += &v,
                            slot @ None => {
                                *slot = Some(v);
                                touched.push(*c);
                            }
                        }
                    }
                }
                touched.sort_unstable();
                touched
                    .into_iter()
                    .filter_map(|c| acc[c].take().filter(|v| !v.is_zero()).map(|v| (c, v)))
                    .collect()
            })
            .collect();
        GradedOp { parity_row: self.parity_row.clone(), parity_col: o.parity_col.clone(), data }
    }

    pub fn transpose(&self) -> GradedOp {
        GradedOp::from_triples(
            &self.parity_col,
            &self.parity_row,
            self.triples().map(|(r, c, v)| (c, r, v.clone())),
        )
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols());
        self.data
            .iter()
            .map(|row| {
                let mut s = Rat::zero();
                for (c, a) in row {
                    if !v[*c].is_zero() {
                        s += &(a * &v[*c]);
                    }
                }
                s
            })
            .collect()
    }

    /// Koszul tensor: `(A⊗B)(u⊗v) = (-1)^{[B][u]} Au⊗Bv`, sign taken entrywise from
    /// the parity of each entry of `B` so mixed operators are handled too.
    pub fn tensor(&self, b: &GradedOp) -> GradedOp {
        let nb_r = b.rows();
        let nb_c = b.cols();
        let pr = tensor_parities(&self.parity_row, &b.parity_row);
        let pc = tensor_parities(&self.parity_col, &b.parity_col);
        let mut data: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); self.rows() * nb_r];
        for (r1, row) in self.data.iter().enumerate() {
            for r2 in 0..nb_r {
                let out = &mut data[r1 * nb_r + r2];
                for (c1, a) in row {
                    let pu = self.parity_col[*c1];
                    for (c2, bv) in &b.data[r2] {
                        let pb = (b.parity_row[r2] + b.parity_col[*c2]) % 2;
                        let v = a * bv;
                        let v = if pb * pu == 1 { -v } else { v };
                        out.push((c1 * nb_c + c2, v));
                    }
                }
            }
        }
        GradedOp { parity_row: pr, parity_col: pc, data }
    }

    pub fn supertrace(&self) -> Rat {
        assert_eq!(self.rows(), self.cols());
        let mut s = Rat::zero();
        for r in 0..self.rows() {
            let v = self.get(r, r);
            if self.parity_row[r] == 1 {
                s -= &v;
            } else {
                s += &v;
            }
        }
        s
    }

    /// Largest absolute numerator among nonzero entries (0 for the zero operator).
    pub fn max_abs_numer(&self) -> String {
        self.triples()
            .map(|(_, _, v)| v.numer().magnitude().clone())
            .max()
            .map(|m| m.to_string())
            .unwrap_or_else(|| "0".into())
    }

    pub fn dense(&self) -> Vec<Vec<Rat>> {
        let mut out = vec![vec![Rat::zero(); self.cols()]; self.rows()];
        for (r, c, v) in self.triples() {
            out[r][c] = v.clone();
        }
        out
    }

    /// Adds `d` to entry `(r, c)`.
    pub fn bump(&mut self, r: usize, c: usize, d: &Rat) {
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(i) => {
                row[i].1 += d;
                if row[i].1.is_zero() {
                    row.remove(i);
                }
            }
            Err(i) => {
                if !d.is_zero() {
                    row.insert(i, (c, d.clone()));
                }
            }
        }
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows(),
            cols: self.cols(),
            parity_row: self.parity_row.clone(),
            parity_col: self.parity_col.clone(),
            entries: self.triples().map(|(r, c, v)| (r, c, v.clone())).collect(),
        }
    }

    pub fn from_json(m: &MatrixJson) -> Result<GradedOp, Error> {
        if m.parity_row.len() != m.rows || m.parity_col.len() != m.cols {
            return Err(Error::Shape("matrix JSON parity lengths disagree with shape".into()));
        }
        if m.entries.iter().any(|(r, c, _)| *r >= m.rows || *c >= m.cols) {
            return Err(Error::Shape("matrix JSON entry out of range".into()));
        }
        Ok(GradedOp::from_triples(&m.parity_row, &m.parity_col, m.entries.iter().cloned()))
    }
}

impl From<GradedOp> for MatrixJson {
    fn from(op: GradedOp) -> MatrixJson {
        op.to_json()
    }
}

impl TryFrom<MatrixJson> for GradedOp {
    type Error = Error;

    fn try_from(m: MatrixJson) -> Result<GradedOp, Error> {
        GradedOp::from_json(&m)
    }
}

/// Serialized operator; zero entries omitted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub parity_row: Vec<u8>,
    pub parity_col: Vec<u8>,
    pub entries: Vec<(usize, usize, Rat)>,
}

fn normalize_row(mut row: Vec<(usize, Rat)>) -> Vec<(usize, Rat)> {
    row.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, Rat)> = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += &v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

fn merge_rows(x: &[(usize, Rat)], a: &Rat, y: &[(usize, Rat)], b: &Rat) -> Vec<(usize, Rat)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, b * &y[j].1));
            j += 1;
        } else {
            let v = a * &x[i].1 + b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// `P(u⊗v) = (-1)^{[u][v]} v⊗u`, mapping `A⊗B → B⊗A`.
pub fn graded_permutation(a: &[u8], b: &[u8]) -> GradedOp {
    let (na, nb) = (a.len(), b.len());
    let pr = tensor_parities(b, a);
    let pc = tensor_parities(a, b);
    GradedOp::from_triples(
        &pr,
        &pc,
        (0..na).flat_map(|i| {
            (0..nb).map(move |j| {
                let s = if a[i] * b[j] == 1 { -1 } else { 1 };
                (j * na + i, i * nb + j, Rat::int(s))
            })
        }),
    )
}

/// Which pair of tensor legs an operator acts on inside `V1⊗V2⊗V3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leg {
    L12,
    L13,
    L23,
}

/// Embeds an endomorphism of two legs into the triple product `V1⊗V2⊗V3`:
/// `A12 = A⊗I`, `A23 = I⊗A`, `A13 = (P⊗I)(I⊗A)(P⊗I)` with graded `P` swapping
/// the first two legs, which fixes every Koszul sign.
pub fn embed_leg(a: &GradedOp, leg: Leg, spaces: [&[u8]; 3]) -> Result<GradedOp, Error> {
    let [v1, v2, v3] = spaces;
    let (x, y) = match leg {
        Leg::L12 => (v1, v2),
        Leg::L13 => (v1, v3),
        Leg::L23 => (v2, v3),
    };
    let p = tensor_parities(x, y);
    if a.parity_col != p || a.parity_row != p {
        return Err(Error::Shape(format!("{leg:?} operator does not act on the named legs")));
    }
    Ok(match leg {
        Leg::L12 => a.tensor(&GradedOp::identity(v3)),
        Leg::L23 => GradedOp::identity(v1).tensor(a),
        Leg::L13 => {
            let i3 = GradedOp::identity(v3);
            let p_in = graded_permutation(v1, v2).tensor(&i3);
            let p_out = graded_permutation(v2, v1).tensor(&i3);
            p_out.mul(&GradedOp::identity(v2).tensor(a)).mul(&p_in)
        }
    })
}

/// `[A,B] = AB - (-1)^{[A][B]} BA` for homogeneous operators.
pub fn graded_commutator(a: &GradedOp, b: &GradedOp) -> Result<GradedOp, Error> {
    let pa = a.parity().ok_or_else(|| Error::Shape("mixed-parity operator in commutator".into()))?;
    let pb = b.parity().ok_or_else(|| Error::Shape("mixed-parity operator in commutator".into()))?;
    let s = if pa * pb == 1 { Rat::one() } else { Rat::int(-1) };
    Ok(a.mul(b).lincomb(&Rat::one(), &b.mul(a), &s))
}
