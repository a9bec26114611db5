//! Structure data for gl(m|n) and osp(m|n) in the vector representation.
//!
//! Basis order: even indices `i = 1..m` at positions `0..m`, odd indices
//! `mu = 1..n` at positions `m + mu - 1`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graded::GradedOp;
use crate::scalars::Rat;
use crate::Error;

/// The pair `(m, n)` with `n = 2r`, `h = floor(m/2)`, `s = h + r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraSignature {
    pub m: usize,
    pub n: usize,
}

impl AlgebraSignature {
    pub fn new(m: usize, n: usize) -> Result<AlgebraSignature, Error> {
        if m == 0 || n % 2 == 1 || n <= 2 || m > n {
            return Err(Error::Usage(format!(
                "signature (m,n) = ({m},{n}) outside scope: need 1 <= m <= n, n even, n > 2"
            )));
        }
        Ok(AlgebraSignature { m, n })
    }

    pub fn r(&self) -> usize {
        self.n / 2
    }

    pub fn h(&self) -> usize {
        self.m / 2
    }

    pub fn s(&self) -> usize {
        self.h() + self.r()
    }

    pub fn dim(&self) -> usize {
        self.m + self.n
    }

    /// Position of even index `i` (1-based).
    pub fn even(&self, i: usize) -> usize {
        assert!((1..=self.m).contains(&i));
        i - 1
    }

    /// Position of odd index `mu` (1-based).
    pub fn odd(&self, mu: usize) -> usize {
        assert!((1..=self.n).contains(&mu));
        self.m + mu - 1
    }

    pub fn parity(&self, p: usize) -> u8 {
        u8::from(p >= self.m)
    }

    pub fn parities(&self) -> Vec<u8> {
        (0..self.dim()).map(|p| self.parity(p)).collect()
    }

    pub fn bar(&self, p: usize) -> usize {
        if p < self.m {
            self.m - 1 - p
        } else {
            let mu = p - self.m + 1;
            self.odd(self.n + 1 - mu)
        }
    }

    pub fn xi(&self, p: usize) -> i64 {
        if p < self.m {
            1
        } else if (p - self.m + 1) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Metric `g_ab = xi_a delta_{a, bar b}`.
    pub fn metric(&self, a: usize, b: usize) -> i64 {
        if a == self.bar(b) {
            self.xi(a)
        } else {
            0
        }
    }

    /// Weight of basis vector `p`, reduced with `eps_{bar i} = -eps_i`.
    pub fn basis_weight(&self, p: usize) -> Weight {
        let mut w = Weight::zero(self);
        if p < self.m {
            let i = p + 1;
            if i <= self.h() {
                w.eps[i - 1] = Rat::one();
            } else if self.m + 1 - i <= self.h() {
                w.eps[self.m - i] = Rat::int(-1);
            }
        } else {
            let mu = p - self.m + 1;
            if mu <= self.r() {
                w.delta[mu - 1] = Rat::one();
            } else {
                w.delta[self.n - mu] = Rat::int(-1);
            }
        }
        w
    }

    pub fn eps(&self, i: usize) -> Weight {
        let mut w = Weight::zero(self);
        w.eps[i - 1] = Rat::one();
        w
    }

    pub fn delta(&self, mu: usize) -> Weight {
        let mut w = Weight::zero(self);
        w.delta[mu - 1] = Rat::one();
        w
    }
}

impl fmt::Display for AlgebraSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "osp({}|{})", self.m, self.n)
    }
}

/// Coefficients over `eps_1..eps_h | delta_1..delta_r`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Weight {
    pub eps: Vec<Rat>,
    pub delta: Vec<Rat>,
}

impl Weight {
    pub fn zero(sig: &AlgebraSignature) -> Weight {
        Weight { eps: vec![Rat::zero(); sig.h()], delta: vec![Rat::zero(); sig.r()] }
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight {
            eps: self.eps.iter().zip(&o.eps).map(|(a, b)| a + b).collect(),
            delta: self.delta.iter().zip(&o.delta).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        self.add(&o.scale(&Rat::int(-1)))
    }

    pub fn scale(&self, s: &Rat) -> Weight {
        Weight {
            eps: self.eps.iter().map(|a| a * s).collect(),
            delta: self.delta.iter().map(|a| a * s).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.eps.iter().chain(&self.delta).all(Rat::is_zero)
    }

    /// Parity of vectors of this weight in tensor powers of the vector module:
    /// the sum of the delta coefficients mod 2.
    pub fn parity(&self) -> u8 {
        let s = self.delta.iter().fold(Rat::zero(), |a, b| a + b);
        let n = s.numer().clone() % 2;
        u8::from(!num::Zero::is_zero(&n))
    }

    /// Height-like key used to order highest weights: larger first.
    pub fn order_key(&self) -> (Rat, Vec<Rat>) {
        let total = self.eps.iter().chain(&self.delta).fold(Rat::zero(), |a, b| a + b);
        let mut lex: Vec<Rat> = self.delta.clone();
        lex.extend(self.eps.iter().cloned());
        (total, lex)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, cs) in [("e", &self.eps), ("d", &self.delta)] {
            for (i, c) in cs.iter().enumerate() {
                if !c.is_zero() {
                    parts.push(format!("{c}{name}{}", i + 1));
                }
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+").replace("+-", "-"))
        }
    }
}

/// Sign of `(delta, delta)`; `Standard` is `-1`. `Flipped` exists as a negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FormConvention {
    #[default]
    Standard,
    Flipped,
}

/// `(eps_i, eps_j) = delta_ij`, `(delta_mu, delta_nu) = -delta_mu_nu`, `(eps, delta) = 0`.
pub fn weight_form(w1: &Weight, w2: &Weight) -> Rat {
    weight_form_with(w1, w2, FormConvention::Standard)
}

pub fn weight_form_with(w1: &Weight, w2: &Weight, conv: FormConvention) -> Rat {
    let mut e = Rat::zero();
    for (a, b) in w1.eps.iter().zip(&w2.eps) {
        e += &(a * b);
    }
    let mut d = Rat::zero();
    for (a, b) in w1.delta.iter().zip(&w2.delta) {
        d += &(a * b);
    }
    match conv {
        FormConvention::Standard => e - d,
        FormConvention::Flipped => e + d,
    }
}

/// Integer value of the form, for weights where it is integral.
pub fn form_int(w1: &Weight, w2: &Weight) -> i64 {
    let v = weight_form(w1, w2);
    assert!(num::One::is_one(v.denom()), "non-integral form value {v}");
    num::ToPrimitive::to_i64(v.numer()).expect("form value overflow")
}

/// `rho = 1/2 sum (m - 2i) eps_i + 1/2 sum (n - m + 2 - 2mu) delta_mu`.
pub fn half_sum_rho(sig: &AlgebraSignature) -> Weight {
    let (m, n) = (sig.m as i64, sig.n as i64);
    Weight {
        eps: (1..=sig.h() as i64).map(|i| Rat::new(m - 2 * i, 2)).collect(),
        delta: (1..=sig.r() as i64).map(|mu| Rat::new(n - m + 2 - 2 * mu, 2)).collect(),
    }
}

/// `C(lambda) = (lambda, lambda + 2 rho)`.
pub fn casimir_eigenvalue(lam: &Weight, sig: &AlgebraSignature) -> Rat {
    casimir_with(lam, sig, FormConvention::Standard)
}

pub fn casimir_with(lam: &Weight, sig: &AlgebraSignature, conv: FormConvention) -> Rat {
    let rho2 = half_sum_rho(sig).scale(&Rat::int(2));
    weight_form_with(lam, &lam.add(&rho2), conv)
}

/// `lambda_{k,l} = (l + k) delta_1 + k delta_2`, the two-column weight.
pub fn two_column_weight(k: i64, l: i64, sig: &AlgebraSignature) -> Weight {
    let mut w = Weight::zero(sig);
    w.delta[0] = Rat::int(l + k);
    w.delta[1] = Rat::int(k);
    w
}

/// Grid weight of node `(c, k)` in the decomposition of `V(lambda_a) ⊗ V(lambda_b)`.
pub fn grid_weight(a: i64, b: i64, c: i64, k: i64, sig: &AlgebraSignature) -> Weight {
    two_column_weight(k, a + b - 2 * c, sig)
}

/// Checks the Casimir-difference identities over the `(c, k)` grid:
///
/// * `C_{c,k} - C_{c,k-1} = 2(rho, d1+d2) - 2(a+b-1) + 4(c-k)` for `1 <= k <= c <= a`,
/// * `C_{c,k} - C_{c+1,k+1} = 2(rho, d1-d2) - 2(a+b-1) + 4c` for `0 <= k <= c < a`.
///
/// The second identity's `4c` is what direct expansion of `(lambda, lambda+2rho)` gives.
pub fn casimir_diff_check(a: i64, b: i64, sig: &AlgebraSignature) -> bool {
    casimir_diff_check_with(a, b, sig, FormConvention::Standard, 4)
}

/// As [`casimir_diff_check`] with an explicit form convention and the coefficient
/// of `c` in the second identity (the correct value is 4).
pub fn casimir_diff_check_with(
    a: i64,
    b: i64,
    sig: &AlgebraSignature,
    conv: FormConvention,
    c_coeff: i64,
) -> bool {
    let rho = half_sum_rho(sig);
    let (d1, d2) = (sig.delta(1), sig.delta(2));
    let r_plus = weight_form_with(&rho, &d1.add(&d2), conv) * Rat::int(2);
    let r_minus = weight_form_with(&rho, &d1.sub(&d2), conv) * Rat::int(2);
    let cas = |c: i64, k: i64| casimir_with(&grid_weight(a, b, c, k, sig), sig, conv);
    let shift = Rat::int(2 * (a + b - 1));
    for c in 0..=a {
        for k in 1..=c {
            let lhs = cas(c, k) - cas(c, k - 1);
            let rhs = &r_plus - &shift + Rat::int(4 * (c - k));
            if lhs != rhs {
                return false;
            }
        }
    }
    for c in 0..a {
        for k in 0..=c {
            let lhs = cas(c, k) - cas(c + 1, k + 1);
            let rhs = &r_minus - &shift + Rat::int(c_coeff * c);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// The graded matrix unit `E^a_b` in the vector representation.
pub fn gl_generator(a: usize, b: usize, sig: &AlgebraSignature) -> Result<GradedOp, Error> {
    if a >= sig.dim() || b >= sig.dim() {
        return Err(Error::Usage(format!("generator index ({a},{b}) out of range")));
    }
    let p = sig.parities();
    Ok(GradedOp::from_triples(&p, &p, [(a, b, Rat::one())]))
}

fn omega_sign(sig: &AlgebraSignature, a: usize, b: usize) -> i64 {
    let (pa, pb) = (sig.parity(a) as i64, sig.parity(b) as i64);
    let s = if (pa * (pa + pb)) % 2 == 1 { -1 } else { 1 };
    s * sig.xi(a) * sig.xi(b)
}

/// Linear combination of gl(m|n) generator labels `E^a_b`.
pub type GenCombo = BTreeMap<(usize, usize), i64>;

/// `omega(E^a_b) = -(-1)^{[a]([a]+[b])} xi_a xi_b E^{bar b}_{bar a}`, extended linearly.
pub fn omega(x: &GenCombo, sig: &AlgebraSignature) -> GenCombo {
    let mut out = GenCombo::new();
    for (&(a, b), &c) in x {
        let key = (sig.bar(b), sig.bar(a));
        *out.entry(key).or_insert(0) -= c * omega_sign(sig, a, b);
    }
    out.retain(|_, v| *v != 0);
    out
}

/// `sigma^a_b = E^a_b + omega(E^a_b)` as a label combination.
pub fn sigma_label(a: usize, b: usize, sig: &AlgebraSignature) -> GenCombo {
    let mut x = GenCombo::from([((a, b), 1)]);
    for (k, v) in omega(&x.clone(), sig) {
        *x.entry(k).or_insert(0) += v;
    }
    x.retain(|_, v| *v != 0);
    x
}

/// `T^a_b = E^a_b - omega(E^a_b)`.
pub fn t_label(a: usize, b: usize, sig: &AlgebraSignature) -> GenCombo {
    let mut x = GenCombo::from([((a, b), 1)]);
    for (k, v) in omega(&x.clone(), sig) {
        *x.entry(k).or_insert(0) -= v;
    }
    x.retain(|_, v| *v != 0);
    x
}

pub fn combo_matrix(x: &GenCombo, sig: &AlgebraSignature) -> GradedOp {
    let p = sig.parities();
    GradedOp::from_triples(&p, &p, x.iter().map(|(&(a, b), &c)| (a, b, Rat::int(c))))
}

pub fn sigma(a: usize, b: usize, sig: &AlgebraSignature) -> GradedOp {
    combo_matrix(&sigma_label(a, b, sig), sig)
}

pub fn t_gen(a: usize, b: usize, sig: &AlgebraSignature) -> GradedOp {
    combo_matrix(&t_label(a, b, sig), sig)
}

/// Chevalley data in the vector representation. Index 0 is the affine node.
#[derive(Clone, Debug)]
pub struct ChevalleyData {
    pub e: Vec<GradedOp>,
    pub f: Vec<GradedOp>,
    /// `h_i = diag((alpha_i, wt))`; `[e_i, f_i] = h_i` classically.
    pub h: Vec<GradedOp>,
    pub roots: Vec<Weight>,
    /// Sign `f_i = sign * F_i` relating to the bare generator table.
    pub f_sign: Vec<i64>,
}

/// Bare `(E_i, F_i, alpha_i)` for `i = 0..=s` as generator label combinations.
pub fn simple_system(sig: &AlgebraSignature) -> Vec<(GenCombo, GenCombo, Weight)> {
    let (m, h, r) = (sig.m, sig.h(), sig.r());
    let ev = |i| sig.even(i);
    let od = |mu| sig.odd(mu);
    let mut out = Vec::new();
    let e0 = GenCombo::from([((od(sig.n), od(2)), 1), ((od(sig.n - 1), od(1)), 1)]);
    let f0 = t_label(od(2), od(sig.n), sig);
    out.push((e0, f0, sig.delta(1).add(&sig.delta(2)).scale(&Rat::int(-1))));
    for i in 1..h {
        out.push((
            sigma_label(ev(i), ev(i + 1), sig),
            sigma_label(ev(i + 1), ev(i), sig),
            sig.eps(i).sub(&sig.eps(i + 1)),
        ));
    }
    if h >= 1 {
        if m % 2 == 1 {
            out.push((sigma_label(ev(h), ev(h + 1), sig), sigma_label(ev(h + 1), ev(h), sig), sig.eps(h)));
        } else if h >= 2 {
            let hb = m + 1 - h;
            out.push((
                sigma_label(ev(h - 1), ev(hb), sig),
                sigma_label(ev(hb), ev(h - 1), sig),
                sig.eps(h - 1).add(&sig.eps(h)),
            ));
        } else {
            out.push((sigma_label(od(r), ev(2), sig), sigma_label(ev(2), od(r), sig), sig.delta(r).add(&sig.eps(1))));
        }
    }
    for mu in 1..r {
        out.push((
            sigma_label(od(mu), od(mu + 1), sig),
            sigma_label(od(mu + 1), od(mu), sig),
            sig.delta(mu).sub(&sig.delta(mu + 1)),
        ));
    }
    let root = if h >= 1 { sig.delta(r).sub(&sig.eps(1)) } else { sig.delta(r) };
    out.push((sigma_label(od(r), ev(1), sig), sigma_label(ev(1), od(r), sig), root));
    out
}

pub fn root_parity(w: &Weight) -> u8 {
    w.parity()
}

/// Chevalley generators with `f_i` signs fixed so that `[e_i, f_i] = h_i`.
pub fn osp_generators(sig: &AlgebraSignature) -> ChevalleyData {
    let p = sig.parities();
    let wts: Vec<Weight> = (0..sig.dim()).map(|i| sig.basis_weight(i)).collect();
    let mut d = ChevalleyData { e: vec![], f: vec![], h: vec![], roots: vec![], f_sign: vec![] };
    for (el, fl, root) in simple_system(sig) {
        let e = combo_matrix(&el, sig);
        let f = combo_matrix(&fl, sig);
        let hdiag: Vec<Rat> = wts.iter().map(|w| weight_form(&root, w)).collect();
        let h = GradedOp::diagonal(&p, hdiag);
        let c = crate::graded::graded_commutator(&e, &f).expect("homogeneous generators");
        let sign = if c == h {
            1
        } else if c == h.neg() {
            -1
        } else {
            panic!("simple generator pair does not close on the Cartan element for {root}");
        };
        d.e.push(e);
        d.f.push(f.scale(&Rat::int(sign)));
        d.h.push(h);
        d.roots.push(root);
        d.f_sign.push(sign);
    }
    d
}

/// `H_0 = -(sigma^1_1 + sigma^2_2)` over the odd indices; `h_0 = H_0 + c/2` with `c = 0`.
pub fn h0_matrix(sig: &AlgebraSignature) -> GradedOp {
    sigma(sig.odd(1), sig.odd(1), sig).add(&sigma(sig.odd(2), sig.odd(2), sig)).neg()
}

/// Cartan matrix: rows normalized by `2/(alpha_i, alpha_i)` where that is nonzero,
/// raw form rows for isotropic roots.
pub fn cartan_matrix(roots: &[Weight]) -> Vec<Vec<Rat>> {
    roots
        .iter()
        .map(|ai| {
            let d = weight_form(ai, ai);
            roots
                .iter()
                .map(|aj| {
                    let v = weight_form(ai, aj);
                    if d.is_zero() {
                        v
                    } else {
                        v * Rat::int(2) / &d
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(m: usize, n: usize) -> AlgebraSignature {
        AlgebraSignature::new(m, n).unwrap()
    }

    #[test]
    fn rho_values() {
        let s = sig(2, 4);
        assert_eq!(half_sum_rho(&s), s.delta(1));
        let s = sig(4, 4);
        assert_eq!(half_sum_rho(&s), s.eps(1).sub(&s.delta(2)));
        let s = sig(1, 4);
        let r = half_sum_rho(&s);
        assert_eq!(r.delta, vec![Rat::new(3, 2), Rat::new(1, 2)]);
    }

    #[test]
    fn casimir_of_delta1() {
        let s = sig(2, 4);
        assert_eq!(casimir_eigenvalue(&s.delta(1), &s), Rat::int(-3));
        assert_eq!(casimir_eigenvalue(&Weight::zero(&s), &s), Rat::zero());
    }

    #[test]
    fn isotropic_last_root() {
        for (m, n) in [(2, 4), (3, 4), (4, 4), (4, 6)] {
            let s = sig(m, n);
            let roots = osp_generators(&s).roots;
            let last = roots.last().unwrap();
            assert!(weight_form(last, last).is_zero());
            assert_eq!(last.parity(), 1);
        }
    }

    #[test]
    fn scope_validation() {
        assert!(AlgebraSignature::new(6, 4).is_err());
        assert!(AlgebraSignature::new(1, 2).is_err());
        assert!(AlgebraSignature::new(2, 5).is_err());
        assert!(AlgebraSignature::new(0, 4).is_err());
    }

    #[test]
    fn sigma_for_odd_m_middle_vanishes() {
        let s = sig(3, 4);
        let h = s.h();
        assert!(sigma(s.even(h + 1), s.even(h + 1), &s).is_zero());
    }

    #[test]
    fn casimir_identity_negative_control() {
        let s = sig(2, 4);
        assert!(casimir_diff_check(1, 1, &s));
        assert!(!casimir_diff_check_with(1, 1, &s, FormConvention::Flipped, 4));
    }
}
