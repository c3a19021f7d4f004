//! Exact-rational polynomial tables: monic Chebyshev polynomials, the
//! shifted family orthogonal under the arc-sine law supported on the
//! Marchenko–Pastur bulk, the lower-triangular coefficient matrix of that
//! family together with its exact inverse, and closed-form limiting
//! spectral moments.
//!
//! All tables are computed in arbitrary-precision rational arithmetic so
//! that the defining recurrences and inversion identities hold exactly;
//! floating point enters only through [`RationalPoly::eval_f64`] at the
//! numerical boundary.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::partitions::binomial;

/// Default order (largest row index) for [`coeff_triangles`].
pub const DEFAULT_TRIANGLE_ORDER: usize = 32;

/// Hard cap on the order accepted by [`coeff_triangles`].
pub const MAX_TRIANGLE_ORDER: usize = 64;

fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat_pow(base: &BigRational, exp: usize) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc = &acc * base;
    }
    acc
}

/// Polynomial in one variable with exact rational coefficients, stored
/// densely by power of `x` with no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial with value `c`.
    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    /// Builds a polynomial from coefficients indexed by power of `x`,
    /// trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^m`; zero beyond the degree.
    pub fn coeff(&self, m: usize) -> BigRational {
        self.coeffs.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficients indexed by power of `x`; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Sum of two polynomials.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for m in 0..n {
            coeffs.push(self.coeff(m) + other.coeff(m));
        }
        Self::from_coeffs(coeffs)
    }

    /// Difference `self − other`.
    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for m in 0..n {
            coeffs.push(self.coeff(m) - other.coeff(m));
        }
        Self::from_coeffs(coeffs)
    }

    /// Product of two polynomials.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// Product with a scalar.
    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact evaluation at a rational point by Horner's scheme.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Floating-point evaluation at `x` by Horner's scheme.
    ///
    /// # Panics
    ///
    /// Panics if a coefficient does not fit into an `f64`.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            let c = c
                .to_f64()
                .expect("polynomial coefficient does not fit into an f64");
            acc = acc * x + c;
        }
        acc
    }
}

/// Monic Chebyshev polynomial on `[−2, 2]`, normalised so that
/// `T_k(2·cos θ) = 2·cos(kθ)` for `k ≥ 1`.
///
/// The family satisfies `T_0 = 1`, `T_1 = x`, and
/// `x·T_k = T_{k+1} + (1 + δ_{k,1})·T_{k−1}`. The index `−1` denotes the
/// zero polynomial.
///
/// # Panics
///
/// Panics if `k < −1`.
pub fn chebyshev_t(k: i64) -> RationalPoly {
    assert!(k >= -1, "chebyshev index must be at least -1, got {k}");
    if k == -1 {
        return RationalPoly::zero();
    }
    let x = RationalPoly::x();
    let mut prev = RationalPoly::zero(); // index -1
    let mut cur = RationalPoly::constant(BigRational::one()); // index 0
    for i in 0..k {
        let mut back = prev;
        if i == 1 {
            back = back.scale(&rat_int(2));
        }
        let next = x.mul(&cur).sub(&back);
        prev = cur;
        cur = next;
    }
    cur
}

/// Monic polynomial family obtained from the Chebyshev polynomials by
/// centring at `1 + y` and scaling by `√y`; orthogonal for the arc-sine
/// law on `[(√y−1)², (√y+1)²]`.
///
/// The family satisfies `Γ_0 = 1`, `Γ_1 = x − (1+y)`, and
/// `x·Γ_k = Γ_{k+1} + (1+y)·Γ_k + (1 + δ_{k,1})·y·Γ_{k−1}`; the square
/// roots cancel, so all coefficients are rational in `y`.
///
/// # Panics
///
/// Panics unless `y > 0`.
pub fn gamma_poly(k: usize, y: &BigRational) -> RationalPoly {
    assert!(y.is_positive(), "aspect parameter y must be positive");
    let shift = RationalPoly::x().sub(&RationalPoly::constant(BigRational::one() + y));
    let mut prev = RationalPoly::zero(); // index -1
    let mut cur = RationalPoly::constant(BigRational::one()); // index 0
    for i in 0..k {
        let mut back = prev.scale(y);
        if i == 1 {
            back = back.scale(&rat_int(2));
        }
        let next = shift.mul(&cur).sub(&back);
        prev = cur;
        cur = next;
    }
    cur
}

/// Variance-scaled version of [`gamma_poly`]: `σ^{2k}·Γ_k(x/σ²)`, whose
/// coefficient of `x^m` is `σ^{2(k−m)}` times the corresponding
/// [`gamma_poly`] coefficient.
///
/// # Panics
///
/// Panics unless `y > 0` and `σ² > 0`.
pub fn gamma_scaled(k: usize, y: &BigRational, sigma_sq: &BigRational) -> RationalPoly {
    assert!(
        sigma_sq.is_positive(),
        "variance parameter sigma^2 must be positive"
    );
    let base = gamma_poly(k, y);
    let coeffs = (0..=k)
        .map(|m| base.coeff(m) * rat_pow(sigma_sq, k - m))
        .collect();
    RationalPoly::from_coeffs(coeffs)
}

/// Lower-triangular table of exact rational coefficients with unit
/// diagonal; row `k` holds columns `0..=k`, and everything above the
/// diagonal is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTriangle {
    order: usize,
    rows: Vec<Vec<BigRational>>,
}

impl CoeffTriangle {
    /// Largest row index; rows run over `0..=order()`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Entry in row `k`, column `m`; zero above the diagonal.
    ///
    /// # Panics
    ///
    /// Panics if `k > order()`.
    pub fn entry(&self, k: usize, m: usize) -> BigRational {
        assert!(k <= self.order, "row {k} exceeds triangle order {}", self.order);
        if m > k {
            BigRational::zero()
        } else {
            self.rows[k][m].clone()
        }
    }

    /// Row `k` as a slice of length `k + 1`.
    ///
    /// # Panics
    ///
    /// Panics if `k > order()`.
    pub fn row(&self, k: usize) -> &[BigRational] {
        assert!(k <= self.order, "row {k} exceeds triangle order {}", self.order);
        &self.rows[k]
    }
}

/// Builds the coefficient triangle of the [`gamma_poly`] family up to the
/// given order together with its exact inverse.
///
/// The first triangle holds the coefficients `g′_{k,m}` of `x^m` in the
/// degree-`k` polynomial; the second is the unit-lower-triangular inverse
/// `(g_{k,m})`, computed by forward substitution so that the product of
/// the two matrices is exactly the identity.
///
/// # Panics
///
/// Panics unless `1 ≤ order ≤ `[`MAX_TRIANGLE_ORDER`] and `y > 0`.
pub fn coeff_triangles(order: usize, y: &BigRational) -> (CoeffTriangle, CoeffTriangle) {
    assert!(order >= 1, "triangle order must be at least 1");
    assert!(
        order <= MAX_TRIANGLE_ORDER,
        "triangle order {order} exceeds the cap of {MAX_TRIANGLE_ORDER}"
    );
    assert!(y.is_positive(), "aspect parameter y must be positive");

    let mut gamma_rows: Vec<Vec<BigRational>> = Vec::with_capacity(order + 1);
    let shift = RationalPoly::x().sub(&RationalPoly::constant(BigRational::one() + y));
    let mut prev = RationalPoly::zero();
    let mut cur = RationalPoly::constant(BigRational::one());
    for k in 0..=order {
        debug_assert_eq!(cur.degree(), Some(k));
        gamma_rows.push(cur.coeffs().to_vec());
        let mut back = prev.scale(y);
        if k == 1 {
            back = back.scale(&rat_int(2));
        }
        let next = shift.mul(&cur).sub(&back);
        prev = cur;
        cur = next;
    }

    let mut inverse_rows: Vec<Vec<BigRational>> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut row = vec![BigRational::zero(); k + 1];
        row[k] = BigRational::one();
        for m in 0..k {
            let mut acc = BigRational::zero();
            for (j, inv_row) in inverse_rows.iter().enumerate().take(k).skip(m) {
                acc = &acc + &(&gamma_rows[k][j] * &inv_row[m]);
            }
            row[m] = -acc;
        }
        inverse_rows.push(row);
    }

    (
        CoeffTriangle {
            order,
            rows: gamma_rows,
        },
        CoeffTriangle {
            order,
            rows: inverse_rows,
        },
    )
}

/// Closed form for the inverse-triangle entries:
/// `Σ_{j=0}^{k−m} y^j · C(k,j) · C(k,m+j)`.
///
/// # Panics
///
/// Panics if `m > k`.
pub fn g_closed_form(k: usize, m: usize, y: &BigRational) -> BigRational {
    assert!(m <= k, "column {m} exceeds row {k}");
    let mut acc = BigRational::zero();
    for j in 0..=(k - m) {
        let count = BigInt::from(binomial(k as u64, j as u64))
            * BigInt::from(binomial(k as u64, (m + j) as u64));
        acc = &acc + &(rat_pow(y, j) * BigRational::from_integer(count));
    }
    acc
}

/// `k`-th moment of the limiting spectral distribution of the sample
/// covariance model with dimension ratios `κ`, `μ` and entry variance
/// `σ²`:
/// `(σ^{2k}/k) · Σ_{i=1}^{k} C(k,i)·C(k,i−1)·κ^{i−1}·μ^{k−i+1}`.
///
/// For `κ = μ = σ² = 1` this reduces to the `k`-th Catalan number.
///
/// # Panics
///
/// Panics unless `k ≥ 1` and all parameters are positive.
pub fn mp_moment(
    k: usize,
    kappa: &BigRational,
    mu: &BigRational,
    sigma_sq: &BigRational,
) -> BigRational {
    assert!(k >= 1, "moment order must be at least 1");
    assert!(kappa.is_positive(), "dimension ratio kappa must be positive");
    assert!(mu.is_positive(), "dimension ratio mu must be positive");
    assert!(
        sigma_sq.is_positive(),
        "variance parameter sigma^2 must be positive"
    );
    let mut sum = BigRational::zero();
    for i in 1..=k {
        let count = BigInt::from(binomial(k as u64, i as u64))
            * BigInt::from(binomial(k as u64, (i - 1) as u64));
        let term = BigRational::from_integer(count)
            * rat_pow(kappa, i - 1)
            * rat_pow(mu, k - i + 1);
        sum = &sum + &term;
    }
    rat_pow(sigma_sq, k) / rat_int(k as i64) * sum
}
