//! Double-double building blocks (error-free transformations) shared by
//! the linear algebra and polynomial code. Values are unevaluated sums
//! hi + lo with |lo| <= ulp(hi)/2, giving roughly 32 significant digits —
//! enough to absorb the cancellation the ill-conditioned moment systems
//! and far-centered Taylor shifts produce.

use libm::fma;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

pub(crate) fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let v = s - a;
    let e = (a - (s - v)) + (b - v);
    Dd { hi: s, lo: e }
}

pub(crate) fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let e = b - (s - a);
    Dd { hi: s, lo: e }
}

pub(crate) fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    let e = fma(a, b, -p);
    Dd { hi: p, lo: e }
}

pub(crate) fn dd_add(a: Dd, b: Dd) -> Dd {
    let s = two_sum(a.hi, b.hi);
    quick_two_sum(s.hi, s.lo + a.lo + b.lo)
}

pub(crate) fn dd_sub(a: Dd, b: Dd) -> Dd {
    dd_add(a, Dd { hi: -b.hi, lo: -b.lo })
}

pub(crate) fn dd_mul(a: Dd, b: Dd) -> Dd {
    let p = two_prod(a.hi, b.hi);
    quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi)
}

pub(crate) fn dd_div(a: Dd, b: Dd) -> Dd {
    let q0 = a.hi / b.hi;
    let r = dd_sub(a, dd_mul(Dd::from(q0), b));
    let q1 = r.to_f64() / b.hi;
    quick_two_sum(q0, q1)
}
