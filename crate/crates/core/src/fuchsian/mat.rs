use std::ops::Mul;

use serde::Serialize;

use crate::scalar::Real;

/// Real 2x2 matrix `[[a, b], [c, d]]`, acting on the upper half-plane by
/// `z -> (az + b) / (cz + d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Real> Mat2<T> {
    pub const fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn diag(x: T, y: T) -> Self {
        Mat2::new(x, T::zero(), T::zero(), y)
    }

    /// Hyperbolic translation by `dist` along the imaginary axis, upwards for
    /// positive `dist`.
    pub fn translation(dist: T) -> Self {
        let h = (dist / T::lit(2.0)).exp();
        Mat2::diag(h, T::one() / h)
    }

    /// Translation by `dist` along the unit circle, from `-1` towards `1`.
    pub fn translation_unit_circle(dist: T) -> Self {
        let h = dist / T::lit(2.0);
        Mat2::new(h.cosh(), h.sinh(), h.sinh(), h.cosh())
    }

    /// Half-turn about `i`: `z -> -1/z`.
    pub fn half_turn() -> Self {
        Mat2::new(T::zero(), -T::one(), T::one(), T::zero())
    }

    pub fn det(&self) -> T {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> T {
        self.a + self.d
    }

    /// Inverse assuming unit determinant.
    pub fn inv(&self) -> Self {
        Mat2::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn scale(&self, s: T) -> Self {
        Mat2::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn norm_sq(&self) -> T {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    /// Entrywise absolute value.
    pub fn abs(&self) -> Self {
        Mat2::new(self.a.abs(), self.b.abs(), self.c.abs(), self.d.abs())
    }

    pub fn norm(&self) -> T {
        self.norm_sq().sqrt()
    }

    /// Rescale to unit determinant. `None` if the determinant is not positive.
    pub fn normalized(&self) -> Option<Self> {
        let det = self.det();
        (det > T::zero()).then(|| self.scale(T::one() / det.sqrt()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.c - other.c).abs())
            .max((self.d - other.d).abs())
    }

    /// Eigenvalues `(big, small)` with `|big| > 1`, for a hyperbolic matrix of
    /// unit determinant.
    pub fn hyperbolic_eigenvalues(&self) -> Option<(T, T)> {
        let t = self.trace();
        let disc = t * t - T::lit(4.0);
        if !(disc > T::zero()) {
            return None;
        }
        let big = (t + t.signum() * disc.sqrt()) / T::lit(2.0);
        Some((big, T::one() / big))
    }

    /// Eigenvector for `lambda`, as a point `(x, y)` of the projective line.
    pub fn eigenvector(&self, lambda: T) -> (T, T) {
        let v1 = (self.b, lambda - self.a);
        let v2 = (lambda - self.d, self.c);
        if v1.0.abs() + v1.1.abs() >= v2.0.abs() + v2.1.abs() {
            v1
        } else {
            v2
        }
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Mat2<T>;

    fn mul(self, o: Mat2<T>) -> Mat2<T> {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

/// `(s, e)` with `s = fl(a + b)` and `a + b = s + e` exactly.
fn two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// `(p, e)` with `p = fl(a b)` and `a b = p + e` exactly.
fn two_prod<T: Real>(a: T, b: T) -> (T, T) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Running product of matrices kept as an unevaluated sum `hi + lo`, which
/// roughly doubles the working precision.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CompensatedProduct<T> {
    hi: Mat2<T>,
    lo: Mat2<T>,
}

impl<T: Real> CompensatedProduct<T> {
    pub(crate) fn identity() -> Self {
        CompensatedProduct { hi: Mat2::identity(), lo: Mat2::new(T::zero(), T::zero(), T::zero(), T::zero()) }
    }

    fn entry(xh: T, xl: T, yh: T, yl: T, u: T, v: T) -> (T, T) {
        let (p0, e0) = two_prod(xh, u);
        let (p1, e1) = two_prod(yh, v);
        let (s, e) = two_sum(p0, p1);
        two_sum(s, e + e0 + e1 + xl * u + yl * v)
    }

    /// Multiply on the right by `m`.
    pub(crate) fn mul(self, m: &Mat2<T>) -> Self {
        let (h, l) = (self.hi, self.lo);
        let (a, al) = Self::entry(h.a, l.a, h.b, l.b, m.a, m.c);
        let (b, bl) = Self::entry(h.a, l.a, h.b, l.b, m.b, m.d);
        let (c, cl) = Self::entry(h.c, l.c, h.d, l.d, m.a, m.c);
        let (d, dl) = Self::entry(h.c, l.c, h.d, l.d, m.b, m.d);
        CompensatedProduct { hi: Mat2::new(a, b, c, d), lo: Mat2::new(al, bl, cl, dl) }
    }

    pub(crate) fn trace(&self) -> T {
        let (s, e) = two_sum(self.hi.a, self.hi.d);
        s + (e + self.lo.a + self.lo.d)
    }

    pub(crate) fn matrix(&self) -> Mat2<T> {
        Mat2::new(self.hi.a + self.lo.a, self.hi.b + self.lo.b, self.hi.c + self.lo.c, self.hi.d + self.lo.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_product_recovers_cancellation() {
        // det = (1e8 + 1)(1e8 - 1) - 1e16 = -1, lost entirely in plain products.
        let a = Mat2::<f64>::new(1e8 + 1.0, 1e8, 1e8, 1e8 - 1.0);
        let adj = Mat2::new(a.d, -a.b, -a.c, a.a);
        assert_eq!((a * adj).trace(), 0.0);
        let p = CompensatedProduct::identity().mul(&a).mul(&adj);
        assert_eq!(p.trace(), -2.0);
        assert_eq!(p.matrix(), Mat2::new(-1.0, 0.0, 0.0, -1.0));
    }

    #[test]
    fn eigen_of_diagonal() {
        let m = Mat2::<f64>::translation(2.0);
        let (big, small) = m.hyperbolic_eigenvalues().unwrap();
        assert!((big - 1f64.exp()).abs() < 1e-14 && (small - (-1f64).exp()).abs() < 1e-14);
        let (x, y) = m.eigenvector(big);
        assert!(y == 0.0 && x != 0.0);
        let (x, _) = m.eigenvector(small);
        assert_eq!(x, 0.0);
    }

    #[test]
    fn half_turn_reverses_translation() {
        let j = Mat2::<f64>::half_turn();
        let t = Mat2::translation(1.3);
        let r = j * t * j.inv();
        assert!(r.max_abs_diff(&Mat2::translation(-1.3)) < 1e-15);
    }
}
