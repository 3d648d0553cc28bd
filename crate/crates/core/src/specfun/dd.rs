//! Minimal double-double arithmetic for the near-zero refinement of `J_q`.

use libm::fma;

#[derive(Debug, Clone, Copy)]
pub(super) struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

impl Dd {
    pub(super) const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub(super) fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub(super) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub(super) fn abs_hi(self) -> f64 {
        libm::fabs(self.hi)
    }

    pub(super) fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }

    pub(super) fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub(super) fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    pub(super) fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = fma(self.hi, o.hi, -p);
        let (hi, lo) = quick_two_sum(p, e + (self.hi * o.lo + self.lo * o.hi));
        Dd { hi, lo }
    }

    /// Multiplication by an exact power of two.
    pub(super) fn scale(self, p: f64) -> Dd {
        Dd {
            hi: self.hi * p,
            lo: self.lo * p,
        }
    }

    pub(super) fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul(Dd::new(q1)));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul(Dd::new(q2)));
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::new(q3))
    }
}
