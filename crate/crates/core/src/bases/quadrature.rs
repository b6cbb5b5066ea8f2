use crate::error::{Error, Result};
use crate::scalar::Real;

/// Nodes and positive weights of an interpolatory rule on `[-1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule<T = f64> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    /// Highest polynomial degree integrated exactly.
    pub exact_degree: usize,
}

impl<T: Real> QuadratureRule<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Applies the rule on `[-1, 1]`.
    pub fn integrate(&self, f: impl Fn(T) -> T) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&x, &w)| acc + w * f(x))
    }

    /// Applies the rule after the affine map of `[-1, 1]` onto `[a, b]`.
    pub fn integrate_on(&self, a: T, b: T, f: impl Fn(T) -> T) -> T {
        let two = T::lit(2.0);
        let half = (b - a) / two;
        let mid = (a + b) / two;
        half * self.integrate(|x| f(mid + half * x))
    }
}

/// Gauss–Legendre rule with `m` nodes, exact for degree `2m - 1`.
///
/// Nodes come from Newton's method on `P_m` started at the Tricomi estimates;
/// the rule is mirrored so it is exactly symmetric.
pub fn gauss_rule<T: Real>(m: usize) -> Result<QuadratureRule<T>> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "quadrature needs at least one node".into(),
        ));
    }
    let one = T::one();
    let two = T::lit(2.0);
    let half = m.div_ceil(2);
    let mut pos_nodes = Vec::with_capacity(half);
    let mut pos_weights = Vec::with_capacity(half);
    for i in 1..=half {
        let theta = T::PI() * (T::of_usize(i) - T::lit(0.25)) / (T::of_usize(m) + T::lit(0.5));
        let mut x = theta.cos();
        let mut dp = one;
        for iter in 0..100 {
            let (p, p_prev) = legendre_pair(m, x);
            dp = T::of_usize(m) * (x * p - p_prev) / (x * x - one);
            let dx = p / dp;
            x = x - dx;
            if dx.abs() <= T::epsilon() * T::lit(4.0) || iter == 99 {
                let (p, p_prev) = legendre_pair(m, x);
                dp = T::of_usize(m) * (x * p - p_prev) / (x * x - one);
                break;
            }
        }
        if m % 2 == 1 && i == half {
            x = T::zero();
            // P_m'(0) from the recurrence-free identity P_m'(0) = m P_{m-1}(0).
            dp = T::of_usize(m) * legendre_pair(m - 1, T::zero()).0;
        }
        pos_nodes.push(x);
        pos_weights.push(two / ((one - x * x) * dp * dp));
    }

    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for (&x, &w) in pos_nodes.iter().zip(&pos_weights) {
        nodes.push(if x == T::zero() { x } else { -x });
        weights.push(w);
    }
    let mirrored = if m % 2 == 1 { half - 1 } else { half };
    for k in (0..mirrored).rev() {
        nodes.push(pos_nodes[k]);
        weights.push(pos_weights[k]);
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        exact_degree: 2 * m - 1,
    })
}

/// Gauss–Chebyshev rule with `m` nodes for `∫ f(x) / √(1 − x²) dx`.
///
/// This is the midpoint rule in `θ` after `x = cos θ`; the weight function is
/// folded into the weights, and polynomials of degree `2m - 1` are exact.
pub fn gauss_chebyshev_rule<T: Real>(m: usize) -> Result<QuadratureRule<T>> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "quadrature needs at least one node".into(),
        ));
    }
    let w = T::PI() / T::of_usize(m);
    let mut nodes: Vec<T> = (0..m)
        .map(|k| (T::PI() * T::of_usize(2 * k + 1) / T::of_usize(2 * m)).cos())
        .collect();
    nodes.reverse();
    // Enforce exact symmetry.
    for k in 0..m / 2 {
        let v = (nodes[m - 1 - k] - nodes[k]) / T::lit(2.0);
        nodes[k] = -v;
        nodes[m - 1 - k] = v;
    }
    if m % 2 == 1 {
        nodes[m / 2] = T::zero();
    }
    Ok(QuadratureRule {
        nodes,
        weights: vec![w; m],
        exact_degree: 2 * m - 1,
    })
}

/// `(P_n(x), P_{n-1}(x))` by the three-term recurrence; `P_{-1}` is taken as 0.
fn legendre_pair<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p_prev = T::zero();
    let mut p = T::one();
    for k in 0..n {
        let kf = T::of_usize(k);
        let next = ((kf + kf + T::one()) * x * p - kf * p_prev) / (kf + T::one());
        p_prev = p;
        p = next;
    }
    (p, p_prev)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let r = gauss_rule::<f64>(1).unwrap();
        assert_eq!(r.nodes, vec![0.0]);
        assert_eq!(r.weights, vec![2.0]);
        assert_eq!(r.exact_degree, 1);

        let r = gauss_rule::<f64>(2).unwrap();
        let a = 1.0 / 3f64.sqrt();
        assert!((r.nodes[0] + a).abs() < 1e-15 && (r.nodes[1] - a).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15 && (r.weights[1] - 1.0).abs() < 1e-15);
        assert!(gauss_rule::<f64>(0).is_err());
    }

    #[test]
    fn five_nodes_integrate_x8() {
        let r = gauss_rule::<f64>(5).unwrap();
        assert!((r.integrate(|x| x.powi(8)) - 2.0 / 9.0).abs() < 1e-13);
    }

    #[test]
    fn exactness_up_to_32_nodes() {
        for m in 1..=32usize {
            let r = gauss_rule::<f64>(m).unwrap();
            let total: f64 = r.weights.iter().sum();
            assert!((total - 2.0).abs() < 1e-13, "m={m}");
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
            for k in 0..=(2 * m - 1) {
                let exact = if k % 2 == 1 {
                    0.0
                } else {
                    2.0 / (k as f64 + 1.0)
                };
                let got = r.integrate(|x| x.powi(k as i32));
                assert!((got - exact).abs() < 1e-12, "m={m} k={k} got {got}");
            }
        }
    }

    #[test]
    fn chebyshev_rule_moments() {
        // ∫ x^{2k} / √(1−x²) = π (2k−1)!! / (2k)!!
        let r = gauss_chebyshev_rule::<f64>(6).unwrap();
        let mut expected = std::f64::consts::PI;
        for k in 0..6usize {
            let got = r.integrate(|x| x.powi(2 * k as i32));
            assert!((got - expected).abs() < 1e-13, "k={k}");
            expected *= (2 * k + 1) as f64 / (2 * k + 2) as f64;
        }
    }

    #[test]
    fn single_precision_rule() {
        let r = gauss_rule::<f32>(8).unwrap();
        let total: f32 = r.weights.iter().sum();
        assert!((total - 2.0).abs() < 1e-5);
    }
}
