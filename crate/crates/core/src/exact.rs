//! Gram–Schmidt over raw monomials in any field, typically exact rationals.
//!
//! This is the textbook construction of a graded orthogonal basis: start from
//! `1, s, s², …` and orthogonalize under the (Sobolev) inner product using the
//! closed-form moments of the weight. It is far too ill-conditioned for floating
//! point at useful degrees, but with [`crate::Rational`] it is exact and serves
//! as an independent check on [`crate::bases::build_basis`].
//!
//! Chebyshev-weight moments carry a common factor `π`. It cancels in every
//! projection ratio, so moments here are reported divided by `π`; squared norms
//! for the Chebyshev weight are therefore in units of `π`.

use num_traits::{FromPrimitive, Num};

use crate::bases::{RefKind, Weight};

/// Polynomial `Σ c_k s^k` with coefficients in a field.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Clone + Num> MonomialPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(T::zero());
        }
        MonomialPoly { coeffs }
    }

    /// `s^k`
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![T::zero(); k + 1];
        c[k] = T::one();
        MonomialPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &T {
        self.coeffs.last().expect("never empty")
    }

    pub fn eval(&self, s: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * s.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * from_usize::<T>(k))
            .collect::<Vec<_>>();
        MonomialPoly::new(c)
    }

    pub fn scale(&self, f: &T) -> Self {
        MonomialPoly::new(self.coeffs.iter().map(|c| c.clone() * f.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).cloned().unwrap_or_else(T::zero);
                let b = other.coeffs.get(k).cloned().unwrap_or_else(T::zero);
                a - b
            })
            .collect();
        MonomialPoly::new(c)
    }

    /// `s · self`
    fn shift(&self) -> Self {
        let mut c = vec![T::zero()];
        c.extend(self.coeffs.iter().cloned());
        MonomialPoly::new(c)
    }
}

fn from_usize<T: Num>(n: usize) -> T {
    (0..n).fold(T::zero(), |acc, _| acc + T::one())
}

/// `∫ s^k w(s) ds` over `[-1, 1]`; divided by `π` for the Chebyshev weight.
pub fn moment<T: Clone + Num + FromPrimitive>(weight: Weight, k: usize) -> T {
    if k % 2 == 1 {
        return T::zero();
    }
    match weight {
        Weight::Unit => T::from_u64(2).unwrap() / T::from_usize(k + 1).unwrap(),
        // (k − 1)!! / k!!
        Weight::Chebyshev => (1..=k / 2).fold(T::one(), |acc, j| {
            acc * T::from_usize(2 * j - 1).unwrap() / T::from_usize(2 * j).unwrap()
        }),
    }
}

/// Sobolev inner product of two monomial-form polynomials from the moments.
pub fn sobolev_inner<T: Clone + Num + FromPrimitive>(
    p: &MonomialPoly<T>,
    q: &MonomialPoly<T>,
    weight: Weight,
    mu: &T,
) -> T {
    let plain = |a: &MonomialPoly<T>, b: &MonomialPoly<T>| {
        let mut acc = T::zero();
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if (i + j) % 2 == 1 || bj.is_zero() {
                    continue;
                }
                acc = acc + ai.clone() * bj.clone() * moment::<T>(weight, i + j);
            }
        }
        acc
    };
    let value = plain(p, q);
    if mu.is_zero() {
        return value;
    }
    value + mu.clone() * plain(&p.derivative(), &q.derivative())
}

/// Monic graded basis `B_0 .. B_degree` by classical Gram–Schmidt over monomials,
/// together with the squared norms (in units of `π` for the Chebyshev weight).
pub fn monomial_gram_schmidt<T: Clone + Num + FromPrimitive>(
    weight: Weight,
    degree: usize,
    mu: &T,
) -> (Vec<MonomialPoly<T>>, Vec<T>) {
    let mut basis: Vec<MonomialPoly<T>> = Vec::with_capacity(degree + 1);
    let mut norms: Vec<T> = Vec::with_capacity(degree + 1);
    for i in 0..=degree {
        let start = MonomialPoly::monomial(i);
        let mut v = start.clone();
        for (b, nb) in basis.iter().zip(&norms) {
            let r = sobolev_inner(&start, b, weight, mu) / nb.clone();
            v = v.sub(&b.scale(&r));
        }
        norms.push(sobolev_inner(&v, &v, weight, mu));
        basis.push(v);
    }
    (basis, norms)
}

/// Monomial form of the reference element `P_i` or `T_i`.
pub fn reference_monomial<T: Clone + Num + FromPrimitive>(
    kind: RefKind,
    i: usize,
) -> MonomialPoly<T> {
    let mut prev = MonomialPoly::<T>::monomial(0);
    if i == 0 {
        return prev;
    }
    let mut cur = MonomialPoly::<T>::monomial(1);
    for k in 1..i {
        let next = match kind {
            RefKind::Legendre => {
                let a = T::from_usize(2 * k + 1).unwrap() / T::from_usize(k + 1).unwrap();
                let b = T::from_usize(k).unwrap() / T::from_usize(k + 1).unwrap();
                cur.shift().scale(&a).sub(&prev.scale(&b))
            }
            RefKind::Chebyshev => cur.shift().scale(&T::from_u64(2).unwrap()).sub(&prev),
        };
        prev = cur;
        cur = next;
    }
    cur
}

/// Coefficients of `p` over the reference family, by peeling off leading terms.
pub fn to_reference<T: Clone + Num + FromPrimitive>(kind: RefKind, p: &MonomialPoly<T>) -> Vec<T> {
    let n = p.degree() + 1;
    let mut out = vec![T::zero(); n];
    let mut rest = p.clone();
    for k in (0..n).rev() {
        let r = reference_monomial::<T>(kind, k);
        let c = rest.coeffs.get(k).cloned().unwrap_or_else(T::zero) / r.leading().clone();
        if !c.is_zero() {
            rest = rest.sub(&r.scale(&c));
        }
        out[k] = c;
    }
    out
}
