//! Graded orthogonal bases on `[-1, 1]`.
//!
//! Legendre and Chebyshev are the classical families. Their Sobolev variants
//! are produced by Gram–Schmidt under
//! `⟨f, g⟩ = ∫ f g w ds + μ ∫ f' g' w ds` with `w = 1` or `w = 1/√(1 − s²)`.
//! Orthogonalization runs over the classical family of the same weight rather
//! than over raw monomials; the two constructions span the same nested spaces
//! and yield the same basis, and [`crate::exact`] checks that in exact arithmetic.
//!
//! Every basis stores a lower-triangular change of basis `M` with
//! `B_i = Σ_{k≤i} M[i][k] R_k`, `M[i][i] = 1`, and the squared norms of its
//! elements. Elements are not normalized.

mod condition;
mod quadrature;
mod reference;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use condition::{basis_sup_norm, condition_number, Conditioning};
pub use quadrature::{gauss_chebyshev_rule, gauss_rule, QuadratureRule};
pub use reference::{
    clenshaw, eval_all, eval_all_with_derivatives, eval_reference, reference_diff_matrix,
    reference_sq_norm, RefKind,
};

use crate::error::{Error, Result};
use crate::ink::ArcCurve;
use crate::linalg::{dot, SquareMatrix};
use crate::scalar::{clamp_unit, Real};

/// Extra quadrature nodes beyond the degree used by every integral.
pub const QUADRATURE_MARGIN: usize = 8;

/// The four basis families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisKind {
    Legendre,
    Chebyshev,
    LegendreSobolev,
    ChebyshevSobolev,
}

impl BasisKind {
    pub const ALL: [BasisKind; 4] = [
        BasisKind::Legendre,
        BasisKind::Chebyshev,
        BasisKind::LegendreSobolev,
        BasisKind::ChebyshevSobolev,
    ];

    pub fn reference(self) -> RefKind {
        match self {
            BasisKind::Legendre | BasisKind::LegendreSobolev => RefKind::Legendre,
            BasisKind::Chebyshev | BasisKind::ChebyshevSobolev => RefKind::Chebyshev,
        }
    }

    pub fn is_sobolev(self) -> bool {
        matches!(
            self,
            BasisKind::LegendreSobolev | BasisKind::ChebyshevSobolev
        )
    }

    pub fn weight(self) -> Weight {
        match self.reference() {
            RefKind::Legendre => Weight::Unit,
            RefKind::Chebyshev => Weight::Chebyshev,
        }
    }

    /// The non-Sobolev family with the same weight.
    pub fn classical(self) -> BasisKind {
        match self.reference() {
            RefKind::Legendre => BasisKind::Legendre,
            RefKind::Chebyshev => BasisKind::Chebyshev,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Legendre => "legendre",
            BasisKind::Chebyshev => "chebyshev",
            BasisKind::LegendreSobolev => "legendre-sobolev",
            BasisKind::ChebyshevSobolev => "chebyshev-sobolev",
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace(['_', ' '], "-");
        BasisKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown basis '{s}'")))
    }
}

/// Weight function of an inner product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Weight {
    /// `w(s) = 1`
    Unit,
    /// `w(s) = 1 / √(1 − s²)`
    Chebyshev,
}

/// `⟨f, g⟩ = ∫ f g w ds + μ ∫ f' g' w ds`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InnerProduct<T = f64> {
    pub weight: Weight,
    pub mu: T,
}

impl<T: Real> InnerProduct<T> {
    pub fn new(weight: Weight, mu: T) -> Result<Self> {
        if !(mu >= T::zero()) || !mu.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "mu must be finite and nonnegative, got {mu}"
            )));
        }
        Ok(InnerProduct { weight, mu })
    }
}

/// A graded basis of degree `≤ d` expressed over its classical reference family.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthoBasis<T = f64> {
    kind: BasisKind,
    degree: usize,
    mu: T,
    change: SquareMatrix<T>,
    diff: SquareMatrix<T>,
    sq_norms: Vec<T>,
    ref_sq_norms: Vec<T>,
    ref_diff: SquareMatrix<T>,
    segment_rule: QuadratureRule<T>,
}

impl<T: Real> OrthoBasis<T> {
    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of elements, `d + 1`.
    pub fn len(&self) -> usize {
        self.degree + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Derivative weight of the basis's own inner product (0 for classical kinds).
    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn reference(&self) -> RefKind {
        self.kind.reference()
    }

    pub fn inner_product(&self) -> InnerProduct<T> {
        InnerProduct {
            weight: self.kind.weight(),
            mu: self.mu,
        }
    }

    /// Lower-triangular `M` with `B_i = Σ_k M[i][k] R_k`.
    pub fn change_of_basis(&self) -> &SquareMatrix<T> {
        &self.change
    }

    /// Differentiation matrix in this basis.
    pub fn diff_matrix(&self) -> &SquareMatrix<T> {
        &self.diff
    }

    /// `⟨B_i, B_i⟩` under the basis's own inner product.
    pub fn sq_norms(&self) -> &[T] {
        &self.sq_norms
    }

    /// Gauss–Legendre rule used on each integration piece.
    pub fn segment_rule(&self) -> &QuadratureRule<T> {
        &self.segment_rule
    }

    pub(crate) fn ref_sq_norms(&self) -> &[T] {
        &self.ref_sq_norms
    }

    pub(crate) fn ref_diff(&self) -> &SquareMatrix<T> {
        &self.ref_diff
    }

    /// Coefficients over the reference family: `a = Mᵀ c`.
    pub fn to_reference(&self, coeffs: &[T]) -> Vec<T> {
        if self.kind.is_sobolev() {
            self.change.transpose_mul_vec(coeffs)
        } else {
            coeffs.to_vec()
        }
    }

    /// Values `B_0(s) .. B_d(s)`, written into `out`.
    pub fn eval_elements(&self, s: T, out: &mut [T]) {
        let mut refs = vec![T::zero(); self.len()];
        eval_all(self.reference(), s, &mut refs);
        self.combine(&refs, out);
    }

    /// `out_i = Σ_k M[i][k] r_k`.
    pub(crate) fn combine(&self, refs: &[T], out: &mut [T]) {
        if !self.kind.is_sobolev() {
            out.copy_from_slice(refs);
            return;
        }
        for (i, o) in out.iter_mut().enumerate() {
            *o = dot(&self.change.row(i)[..=i], &refs[..=i]);
        }
    }

    /// Wraps coefficients as a polynomial in this basis.
    pub fn poly(&self, coeffs: Vec<T>) -> Result<PolyInBasis<'_, T>> {
        PolyInBasis::new(self, coeffs)
    }
}

/// Builds the basis of the given kind and degree.
///
/// `mu` only matters for the Sobolev kinds; classical kinds store 0.
pub fn build_basis<T: Real>(kind: BasisKind, degree: usize, mu: T) -> Result<OrthoBasis<T>> {
    if !(mu >= T::zero()) || !mu.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "mu must be finite and nonnegative, got {mu}"
        )));
    }
    let n = degree + 1;
    let reference = kind.reference();
    let ref_sq_norms: Vec<T> = (0..n).map(|i| reference_sq_norm(reference, i)).collect();
    let ref_diff = reference_diff_matrix(reference, n);
    let segment_rule = gauss_rule(degree + QUADRATURE_MARGIN)?;

    let (mu, change, sq_norms) = if kind.is_sobolev() {
        let gram = sobolev_gram(reference, n, mu)?;
        let (change, sq_norms) = gram_schmidt(&gram);
        (mu, change, sq_norms)
    } else {
        (T::zero(), SquareMatrix::identity(n), ref_sq_norms.clone())
    };

    let diff = if kind.is_sobolev() {
        conjugate_diff(&ref_diff, &change)
    } else {
        ref_diff.clone()
    };

    Ok(OrthoBasis {
        kind,
        degree,
        mu,
        change,
        diff,
        sq_norms,
        ref_sq_norms,
        ref_diff,
        segment_rule,
    })
}

/// Free-function form of [`OrthoBasis::diff_matrix`].
pub fn diff_matrix<T: Real>(basis: &OrthoBasis<T>) -> &SquareMatrix<T> {
    basis.diff_matrix()
}

/// Gram matrix `G0 + μ G1` of the reference family under its own weight.
///
/// Integrals use Gauss–Legendre (unit weight) or Gauss–Chebyshev (Chebyshev
/// weight) with `n + margin` nodes, exact for the degree-`2d` integrands.
fn sobolev_gram<T: Real>(reference: RefKind, n: usize, mu: T) -> Result<SquareMatrix<T>> {
    let rule = match reference {
        RefKind::Legendre => gauss_rule(n + QUADRATURE_MARGIN)?,
        RefKind::Chebyshev => gauss_chebyshev_rule(n + QUADRATURE_MARGIN)?,
    };
    let mut gram = SquareMatrix::zeros(n);
    let mut vals = vec![T::zero(); n];
    let mut ders = vec![T::zero(); n];
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        eval_all_with_derivatives(reference, x, &mut vals, &mut ders);
        for i in 0..n {
            for j in 0..=i {
                let v = w * (vals[i] * vals[j] + mu * ders[i] * ders[j]);
                gram[(i, j)] = gram[(i, j)] + v;
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            gram[(j, i)] = gram[(i, j)];
        }
    }
    Ok(gram)
}

/// Modified Gram–Schmidt with one reorthogonalization pass over the unit
/// vectors `e_0 .. e_{n-1}` under `⟨u, v⟩ = uᵀ G v`.
///
/// Returns the rows of `M` (each with unit diagonal) and the squared norms.
fn gram_schmidt<T: Real>(gram: &SquareMatrix<T>) -> (SquareMatrix<T>, Vec<T>) {
    let n = gram.dim();
    let mut change = SquareMatrix::zeros(n);
    let mut sq_norms: Vec<T> = Vec::with_capacity(n);
    let mut gv = vec![T::zero(); n];
    for i in 0..n {
        let mut v = vec![T::zero(); n];
        v[i] = T::one();
        for _pass in 0..2 {
            #[allow(clippy::needless_range_loop)]
            for j in 0..i {
                let bj = &change.row(j)[..=j];
                // ⟨v, B_j⟩ = Σ_k Σ_l v_k G[k][l] B_j[l]
                let mut proj = T::zero();
                for (l, &bl) in bj.iter().enumerate() {
                    let col: T = (0..=i).map(|k| v[k] * gram[(k, l)]).sum();
                    proj = proj + col * bl;
                }
                let r = proj / sq_norms[j];
                for (l, &bl) in bj.iter().enumerate() {
                    v[l] = v[l] - r * bl;
                }
            }
        }
        // Only components below i are touched, so the diagonal stays exactly 1.
        for (k, g) in gv.iter_mut().enumerate().take(i + 1) {
            *g = (0..=i).map(|l| gram[(k, l)] * v[l]).sum();
        }
        sq_norms.push(dot(&v[..=i], &gv[..=i]));
        for (k, &vk) in v.iter().enumerate().take(i + 1) {
            change[(i, k)] = vk;
        }
    }
    (change, sq_norms)
}

/// `D = M⁻ᵀ D_ref Mᵀ`, the reference differentiation map seen through `M`.
fn conjugate_diff<T: Real>(
    ref_diff: &SquareMatrix<T>,
    change: &SquareMatrix<T>,
) -> SquareMatrix<T> {
    let n = change.dim();
    let mt = change.transpose();
    let a = ref_diff.mul(&mt);
    // Solve Mᵀ X = A column by column; Mᵀ is upper triangular with unit diagonal.
    let mut x = SquareMatrix::zeros(n);
    for col in 0..n {
        for row in (0..n).rev() {
            let mut acc = a[(row, col)];
            for k in row + 1..n {
                acc = acc - mt[(row, k)] * x[(k, col)];
            }
            x[(row, col)] = acc / mt[(row, row)];
        }
    }
    // Differentiation lowers degree: the map is strictly upper triangular.
    for i in 0..n {
        for j in 0..=i {
            x[(i, j)] = T::zero();
        }
    }
    x
}

/// A polynomial `Σ c_i B_i` in a particular basis.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyInBasis<'a, T = f64> {
    basis: &'a OrthoBasis<T>,
    coeffs: Vec<T>,
}

impl<'a, T: Real> PolyInBasis<'a, T> {
    pub fn new(basis: &'a OrthoBasis<T>, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.len() != basis.len() {
            return Err(Error::BasisMismatch(format!(
                "expected {} coefficients, got {}",
                basis.len(),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coefficient".into()));
        }
        Ok(PolyInBasis { basis, coeffs })
    }

    pub fn basis(&self) -> &'a OrthoBasis<T> {
        self.basis
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficients of the derivative in the same basis.
    pub fn derivative(&self) -> PolyInBasis<'a, T> {
        PolyInBasis {
            basis: self.basis,
            coeffs: self.basis.diff.mul_vec(&self.coeffs),
        }
    }

    pub fn reference_coeffs(&self) -> Vec<T> {
        self.basis.to_reference(&self.coeffs)
    }

    /// Evaluates without the domain check (callers guarantee `|s| ≤ 1`).
    pub(crate) fn eval_unchecked(&self, s: T) -> T {
        clenshaw(self.basis.reference(), &self.reference_coeffs(), s)
    }

    pub fn eval(&self, s: T) -> Result<T> {
        eval_poly(self, s)
    }
}

/// `Σ c_i B_i(s)` via Clenshaw on the reference coefficients `Mᵀ c`.
pub fn eval_poly<T: Real>(p: &PolyInBasis<'_, T>, s: T) -> Result<T> {
    let s = clamp_unit(s).ok_or_else(|| Error::out_of_domain(s))?;
    Ok(p.eval_unchecked(s))
}

/// Left operand of [`inner_product`].
#[derive(Clone, Copy, Debug)]
pub enum Integrand<'a, 'b, T = f64> {
    Poly(&'b PolyInBasis<'a, T>),
    CurveX(&'b ArcCurve<T>),
    CurveY(&'b ArcCurve<T>),
}

/// `∫ f g w ds + μ ∫ f' g' w ds`.
///
/// Polynomial pairs are integrated exactly by a Gauss rule matched to the
/// weight. Against a curve component the integral is split at the curve's
/// nodes: unit weight uses Gauss–Legendre per segment, the Chebyshev weight is
/// handled by substituting `s = cos θ` and applying Gauss–Legendre in `θ`.
pub fn inner_product<T: Real>(
    f: Integrand<'_, '_, T>,
    g: &PolyInBasis<'_, T>,
    ip: InnerProduct<T>,
) -> Result<T> {
    let gd = g.derivative();
    match f {
        Integrand::Poly(p) => {
            if p.basis.reference() != g.basis.reference() {
                return Err(Error::IncompatibleBasis(format!(
                    "{} against {}",
                    p.basis.kind(),
                    g.basis.kind()
                )));
            }
            let pd = p.derivative();
            let m = (p.basis.degree() + g.basis.degree()) / 2 + QUADRATURE_MARGIN;
            let rule = match ip.weight {
                Weight::Unit => gauss_rule(m)?,
                Weight::Chebyshev => gauss_chebyshev_rule(m)?,
            };
            Ok(rule.integrate(|s| {
                p.eval_unchecked(s) * g.eval_unchecked(s)
                    + ip.mu * pd.eval_unchecked(s) * gd.eval_unchecked(s)
            }))
        }
        Integrand::CurveX(curve) | Integrand::CurveY(curve) => {
            let use_x = matches!(f, Integrand::CurveX(_));
            let rule: QuadratureRule<T> = gauss_rule(g.basis.degree() + QUADRATURE_MARGIN)?;
            let mut total = T::zero();
            for seg in 0..curve.segment_count() {
                let (s0, s1) = (curve.s_nodes()[seg], curve.s_nodes()[seg + 1]);
                let (dx, dy) = curve.slope_of_segment(seg);
                let slope = if use_x { dx } else { dy };
                let term = |s: T| {
                    let (x, y) = curve.eval_on_segment(seg, s);
                    let v = if use_x { x } else { y };
                    v * g.eval_unchecked(s) + ip.mu * slope * gd.eval_unchecked(s)
                };
                total = total
                    + match ip.weight {
                        Weight::Unit => rule.integrate_on(s0, s1, term),
                        Weight::Chebyshev => {
                            rule.integrate_on(s1.acos(), s0.acos(), |theta| term(theta.cos()))
                        }
                    };
            }
            Ok(total)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn names_round_trip() {
        for k in BasisKind::ALL {
            assert_eq!(k.name().parse::<BasisKind>().unwrap(), k);
        }
        assert_eq!(
            "Chebyshev_Sobolev".parse::<BasisKind>().unwrap(),
            BasisKind::ChebyshevSobolev
        );
        assert!("bernstein".parse::<BasisKind>().is_err());
    }

    #[test]
    fn classical_inner_products() {
        let cheb = build_basis::<f64>(BasisKind::Chebyshev, 1, 0.0).unwrap();
        let t1 = cheb.poly(vec![0.0, 1.0]).unwrap();
        let v = inner_product(
            Integrand::Poly(&t1),
            &t1,
            InnerProduct::new(Weight::Chebyshev, 0.0).unwrap(),
        )
        .unwrap();
        assert!((v - PI / 2.0).abs() < 1e-14);

        let leg = build_basis::<f64>(BasisKind::Legendre, 1, 0.0).unwrap();
        let one = leg.poly(vec![1.0, 0.0]).unwrap();
        let s = leg.poly(vec![0.0, 1.0]).unwrap();
        for mu in [0.0, 0.125, 1.0] {
            let ip = InnerProduct::new(Weight::Unit, mu).unwrap();
            assert!(inner_product(Integrand::Poly(&one), &s, ip).unwrap().abs() < 1e-15);
        }
        let ip = InnerProduct::new(Weight::Unit, 0.125).unwrap();
        let v = inner_product(Integrand::Poly(&s), &s, ip).unwrap();
        assert!((v - 11.0 / 12.0).abs() < 1e-14);
    }

    #[test]
    fn mismatched_reference_families() {
        let leg = build_basis::<f64>(BasisKind::Legendre, 2, 0.0).unwrap();
        let cs = build_basis::<f64>(BasisKind::ChebyshevSobolev, 2, 0.125).unwrap();
        let a = leg.poly(vec![1.0, 0.0, 0.0]).unwrap();
        let b = cs.poly(vec![1.0, 0.0, 0.0]).unwrap();
        let ip = InnerProduct::new(Weight::Unit, 0.0).unwrap();
        assert!(matches!(
            inner_product(Integrand::Poly(&a), &b, ip),
            Err(Error::IncompatibleBasis(_))
        ));
    }

    #[test]
    fn curve_component_against_polynomial() {
        // x(s) = s on a 3-node polyline; ⟨x, P_1⟩ = 2/3, ⟨x, P_1⟩_S = 2/3 + μ·2.
        let curve =
            ArcCurve::new(vec![-1.0, 0.2, 1.0], vec![-1.0, 0.2, 1.0], vec![0.0; 3]).unwrap();
        let leg = build_basis::<f64>(BasisKind::Legendre, 3, 0.0).unwrap();
        let p1 = leg.poly(vec![0.0, 1.0, 0.0, 0.0]).unwrap();
        let ip = InnerProduct::new(Weight::Unit, 0.125).unwrap();
        let v = inner_product(Integrand::CurveX(&curve), &p1, ip).unwrap();
        assert!((v - (2.0 / 3.0 + 0.25)).abs() < 1e-14);
        assert!(
            inner_product(Integrand::CurveY(&curve), &p1, ip)
                .unwrap()
                .abs()
                < 1e-15
        );

        // Chebyshev weight: ⟨s, T_1⟩_w = π/2, derivative term μ ∫ 1/√(1−s²) = μπ.
        let cheb = build_basis::<f64>(BasisKind::Chebyshev, 3, 0.0).unwrap();
        let t1 = cheb.poly(vec![0.0, 1.0, 0.0, 0.0]).unwrap();
        let ip = InnerProduct::new(Weight::Chebyshev, 0.125).unwrap();
        let v = inner_product(Integrand::CurveX(&curve), &t1, ip).unwrap();
        assert!((v - (PI / 2.0 + 0.125 * PI)).abs() < 1e-13);
    }

    #[test]
    fn classical_bases_are_identity() {
        let b = build_basis::<f64>(BasisKind::Chebyshev, 3, 0.5).unwrap();
        assert_eq!(b.change_of_basis(), &SquareMatrix::identity(4));
        assert_eq!(b.sq_norms(), &[PI, PI / 2.0, PI / 2.0, PI / 2.0]);
        assert_eq!(b.mu(), 0.0);
    }

    #[test]
    fn legendre_sobolev_degree_one() {
        for mu in [0.0, 0.125, 3.0] {
            let b = build_basis::<f64>(BasisKind::LegendreSobolev, 1, mu).unwrap();
            let m = b.change_of_basis();
            assert_eq!(m.rows(), vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
            assert!((b.sq_norms()[1] - (2.0 / 3.0 + 2.0 * mu)).abs() < 1e-14);
        }
    }

    #[test]
    fn diff_matrix_examples() {
        let b = build_basis::<f64>(BasisKind::Legendre, 2, 0.0).unwrap();
        assert_eq!(
            diff_matrix(&b).rows(),
            vec![
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 3.0],
                vec![0.0, 0.0, 0.0]
            ]
        );
        let b = build_basis::<f64>(BasisKind::Chebyshev, 3, 0.0).unwrap();
        let p = b.poly(vec![0.0, 0.0, 0.0, 1.0]).unwrap().derivative();
        assert_eq!(p.coeffs(), &[3.0, 0.0, 6.0, 0.0]);
        for kind in BasisKind::ALL {
            let b = build_basis::<f64>(kind, 6, 0.125).unwrap();
            let mut c = vec![0.0; 7];
            c[0] = 2.5;
            assert!(b
                .poly(c)
                .unwrap()
                .derivative()
                .coeffs()
                .iter()
                .all(|&v| v == 0.0));
        }
    }

    #[test]
    fn eval_examples() {
        for kind in BasisKind::ALL {
            let b = build_basis::<f64>(kind, 5, 0.125).unwrap();
            let mut c = vec![0.0; 6];
            c[0] = 1.0;
            let p = b.poly(c).unwrap();
            for s in [-1.0, -0.4, 0.0, 0.9, 1.0] {
                assert_eq!(p.eval(s).unwrap(), 1.0);
            }
            assert!(matches!(p.eval(-1.01), Err(Error::OutOfDomain { .. })));
        }
        let b = build_basis::<f64>(BasisKind::Chebyshev, 2, 0.0).unwrap();
        assert_eq!(b.poly(vec![0.0, 0.0, 1.0]).unwrap().eval(1.0).unwrap(), 1.0);
        assert!(matches!(b.poly(vec![1.0]), Err(Error::BasisMismatch(_))));
    }

    #[test]
    fn rejects_negative_mu() {
        assert!(build_basis::<f64>(BasisKind::LegendreSobolev, 3, -0.1).is_err());
        assert!(InnerProduct::new(Weight::Unit, f64::NAN).is_err());
    }
}
