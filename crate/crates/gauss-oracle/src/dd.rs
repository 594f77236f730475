//! Minimal double-double arithmetic: an unevaluated sum hi + lo of two
//! f64 values carrying ~106 mantissa bits. Only the handful of operations
//! the oracle needs.

/// hi + lo with |lo| ≤ ulp(hi)/2.
#[derive(Debug, Clone, Copy)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

/// Exact product of two f64 via fused multiply-add.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Exact sum when |a| ≥ |b|.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Exact sum of arbitrary f64.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    let e = (a - (s - v)) + (b - v);
    (s, e)
}

impl DoubleDouble {
    /// The exact product a·b.
    pub fn product(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        DoubleDouble { hi, lo }
    }

    /// self · b.
    pub fn scale(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        DoubleDouble { hi, lo }
    }

    /// self / b.
    pub fn div(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let (d_hi, d_lo) = two_sum(self.hi, -p);
        let q2 = (d_hi + (d_lo + self.lo - e)) / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo }
    }

    /// Fractional part in [0, 1). `hi.fract()` is exact, so the error is
    /// only the representation error of the pair itself.
    pub fn fract(self) -> f64 {
        let f = self.hi.fract() + self.lo;
        f.rem_euclid(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_rational_fractions() {
        // 123456789·91·10/13 has fractional part 10/13 · (123456789·91 mod 13)/1 ...
        // check against exact integer arithmetic
        for (a, b, s, r) in [
            (12345.0, 91.0, 10.0, 13.0),
            (999983.0, 999979.0, 3.0, 7.0),
            (1e12, 91.0, 1.0, 4.0),
        ] {
            let exact_num = (a as u128) * (b as u128) * (s as u128);
            let rem = (exact_num % r as u128) as f64;
            let expect = rem / r;
            let got = DoubleDouble::product(a, b).scale(s).div(r).fract();
            assert!(
                (got - expect).abs() < 1e-12,
                "a={a} b={b} s={s} r={r}: got {got}, expect {expect}"
            );
        }
    }

    #[test]
    fn integer_products_have_zero_fract() {
        let v = DoubleDouble::product(91.0, 10.0).div(13.0); // 70 exactly
        assert_eq!(v.fract(), 0.0);
    }
}
