//! Minimal double-double arithmetic (roughly 32 significant digits) used to
//! build reference oracles that stay independent of the library's own
//! floating-point paths.

#[derive(Clone, Copy, Debug)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
pub const PI: Dd = Dd {
    hi: std::f64::consts::PI,
    lo: 1.2246467991473532e-16,
};
pub const TWO_PI: Dd = Dd {
    hi: std::f64::consts::TAU,
    lo: 2.4492935982947064e-16,
};
pub const FRAC_PI_4: Dd = Dd {
    hi: std::f64::consts::FRAC_PI_4,
    lo: 3.061616997868383e-17,
};

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn neg(self) -> Self {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn add(self, o: Dd) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn sub(self, o: Dd) -> Self {
        self.add(o.neg())
    }

    pub fn mul(self, o: Dd) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, o: f64) -> Self {
        let (p, e) = two_prod(self.hi, o);
        let e = e + self.lo * o;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div(self, o: Dd) -> Self {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul_f64(q1));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul_f64(q2));
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }

    pub fn div_f64(self, o: f64) -> Self {
        self.div(Dd::from_f64(o))
    }

    pub fn sqrt(self) -> Self {
        let s = self.hi.sqrt();
        let (p, e) = two_prod(s, s);
        let diff = self.sub(Dd { hi: p, lo: e });
        let corr = diff.hi / (2.0 * s);
        let (hi, lo) = quick_two_sum(s, corr);
        Dd { hi, lo }
    }
}

/// sin and cos with the argument reduced modulo 2 pi.
pub fn sincos(x: Dd) -> (Dd, Dd) {
    let n = (x.to_f64() / TWO_PI.hi).round();
    let r = x.sub(TWO_PI.mul_f64(n));
    let r2 = r.mul(r);

    let mut cos = ONE;
    let mut term = ONE;
    for k in 1..=30u32 {
        term = term.mul(r2).div_f64(-(((2 * k - 1) * (2 * k)) as f64));
        cos = cos.add(term);
        if term.hi.abs() < 1e-35 {
            break;
        }
    }

    let mut sin = r;
    let mut term = r;
    for k in 1..=30u32 {
        term = term.mul(r2).div_f64(-(((2 * k) * (2 * k + 1)) as f64));
        sin = sin.add(term);
        if term.hi.abs() < 1e-35 {
            break;
        }
    }
    (sin, cos)
}

/// Maclaurin series for J0, reliable for |x| up to roughly 35 at this
/// precision.
pub fn j0_series(x: f64) -> f64 {
    let ax = x.abs();
    let q = Dd::from_f64(ax).mul(Dd::from_f64(ax)).div_f64(4.0);
    let mut term = ONE;
    let mut sum = ONE;
    for m in 1..=300u32 {
        term = term.mul(q).div_f64(-((m as f64) * (m as f64)));
        sum = sum.add(term);
        if term.hi.abs() < 1e-36 * sum.hi.abs().max(1e-6) {
            break;
        }
    }
    sum.to_f64()
}

/// Truncated Hankel expansion for J0; the smallest term is far below f64
/// resolution once |x| is 25 or more.
pub fn j0_asymptotic(x: f64) -> f64 {
    let ax = x.abs();
    let xd = Dd::from_f64(ax);
    let inv_x = ONE.div(xd);

    let mut p = ONE;
    let mut q = ZERO;
    let mut b = ONE;
    let mut xpow = ONE;
    let mut prev = f64::INFINITY;
    for k in 0..80u32 {
        let num = ((2 * k + 1) * (2 * k + 1)) as f64;
        b = b.mul_f64(num).div_f64((8 * (k + 1)) as f64);
        xpow = xpow.mul(inv_x);
        let term = b.mul(xpow);
        let mag = term.hi.abs();
        if mag > prev || mag < 1e-38 {
            break;
        }
        prev = mag;
        let n = k + 1;
        if n.is_multiple_of(2) {
            // contributes to P with sign (-1)^{n/2}
            let t = if (n / 2).is_multiple_of(2) {
                term
            } else {
                term.neg()
            };
            p = p.add(t);
        } else {
            // contributes to Q with sign (-1)^{(n+1)/2}
            let t = if n.div_ceil(2).is_multiple_of(2) {
                term
            } else {
                term.neg()
            };
            q = q.add(t);
        }
    }

    let chi = xd.sub(FRAC_PI_4);
    let (sin, cos) = sincos(chi);
    let amp = Dd::from_f64(2.0).div(PI.mul_f64(ax)).sqrt();
    amp.mul(p.mul(cos).sub(q.mul(sin))).to_f64()
}

/// Reference J0: series for small arguments, Hankel expansion beyond.
pub fn j0_oracle(x: f64) -> f64 {
    if x.abs() <= 30.0 {
        j0_series(x)
    } else {
        j0_asymptotic(x)
    }
}
