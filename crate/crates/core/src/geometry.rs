//! Planar geometry helpers and orientation / in-circle predicates.
//!
//! The predicates evaluate their determinants in double-double arithmetic
//! (about 106 bits of mantissa), which resolves every sign that plain `f64`
//! gets wrong on near-degenerate inputs at the coordinate scales used here.

#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize, serde::Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    #[inline]
    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    #[inline]
    pub fn distance_sq(self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }
}

/// Axis-aligned rectangle `(xmin, ymin, xmax, ymax)`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Window {
    pub xmin: f64,
    pub ymin: f64,
    pub xmax: f64,
    pub ymax: f64,
}

impl Window {
    pub fn new(xmin: f64, ymin: f64, xmax: f64, ymax: f64) -> crate::Result<Self> {
        if !(xmax > xmin && ymax > ymin) || ![xmin, ymin, xmax, ymax].iter().all(|v| v.is_finite()) {
            return Err(crate::Error::param(
                "window",
                format!("need xmax > xmin and ymax > ymin, got ({xmin}, {ymin}, {xmax}, {ymax})"),
            ));
        }
        Ok(Window { xmin, ymin, xmax, ymax })
    }

    pub fn unit() -> Self {
        Window { xmin: 0.0, ymin: 0.0, xmax: 1.0, ymax: 1.0 }
    }

    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn diagonal(&self) -> f64 {
        self.width().hypot(self.height())
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.xmin && p.x <= self.xmax && p.y >= self.ymin && p.y <= self.ymax
    }

    pub fn sample(&self, rng: &mut crate::RngStream) -> Point {
        Point::new(rng.uniform_range(self.xmin, self.xmax), rng.uniform_range(self.ymin, self.ymax))
    }
}

#[derive(Debug, Clone, Copy)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> DoubleDouble {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    DoubleDouble { hi: s, lo: err }
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> DoubleDouble {
    let s = a + b;
    DoubleDouble { hi: s, lo: b - (s - a) }
}

impl DoubleDouble {
    #[inline]
    fn diff(a: f64, b: f64) -> Self {
        two_sum(a, -b)
    }

    #[inline]
    fn add(self, o: Self) -> Self {
        let s = two_sum(self.hi, o.hi);
        let t = two_sum(self.lo, o.lo);
        let s = quick_two_sum(s.hi, s.lo + t.hi);
        quick_two_sum(s.hi, s.lo + t.lo)
    }

    #[inline]
    fn neg(self) -> Self {
        DoubleDouble { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    fn sub(self, o: Self) -> Self {
        self.add(o.neg())
    }

    #[inline]
    fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let err = self.hi.mul_add(o.hi, -p);
        let err = err + (self.hi * o.lo + self.lo * o.hi);
        quick_two_sum(p, err)
    }

    #[inline]
    fn signum(self) -> f64 {
        if self.hi != 0.0 {
            self.hi.signum()
        } else if self.lo != 0.0 {
            self.lo.signum()
        } else {
            0.0
        }
    }
}

/// Sign of the signed area of `(a, b, c)`: positive when counter-clockwise,
/// zero when collinear.
pub fn orient2d(a: Point, b: Point, c: Point) -> f64 {
    let fast = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    let mag = ((b.x - a.x) * (c.y - a.y)).abs() + ((b.y - a.y) * (c.x - a.x)).abs();
    if fast.abs() > 1e-14 * mag {
        return fast.signum();
    }
    let abx = DoubleDouble::diff(b.x, a.x);
    let aby = DoubleDouble::diff(b.y, a.y);
    let acx = DoubleDouble::diff(c.x, a.x);
    let acy = DoubleDouble::diff(c.y, a.y);
    abx.mul(acy).sub(aby.mul(acx)).signum()
}

/// Positive when `d` lies strictly inside the circumcircle of the
/// counter-clockwise triangle `(a, b, c)`, zero when cocircular.
pub fn incircle(a: Point, b: Point, c: Point, d: Point) -> f64 {
    let adx = DoubleDouble::diff(a.x, d.x);
    let ady = DoubleDouble::diff(a.y, d.y);
    let bdx = DoubleDouble::diff(b.x, d.x);
    let bdy = DoubleDouble::diff(b.y, d.y);
    let cdx = DoubleDouble::diff(c.x, d.x);
    let cdy = DoubleDouble::diff(c.y, d.y);

    let alift = adx.mul(adx).add(ady.mul(ady));
    let blift = bdx.mul(bdx).add(bdy.mul(bdy));
    let clift = cdx.mul(cdx).add(cdy.mul(cdy));

    let bc = bdx.mul(cdy).sub(cdx.mul(bdy));
    let ca = cdx.mul(ady).sub(adx.mul(cdy));
    let ab = adx.mul(bdy).sub(bdx.mul(ady));

    alift.mul(bc).add(blift.mul(ca)).add(clift.mul(ab)).signum()
}

/// True when the closed segments `p1p2` and `q1q2` cross at a point interior
/// to both. Shared endpoints and touching at an endpoint do not count.
pub fn segments_properly_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let d1 = orient2d(q1, q2, p1);
    let d2 = orient2d(q1, q2, p2);
    let d3 = orient2d(p1, p2, q1);
    let d4 = orient2d(p1, p2, q2);
    if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
        return true;
    }
    // collinear overlap of positive length
    if d1 == 0.0 && d2 == 0.0 && d3 == 0.0 && d4 == 0.0 {
        let key = |p: Point| if (p2.x - p1.x).abs() >= (p2.y - p1.y).abs() { p.x } else { p.y };
        let (a0, a1) = minmax(key(p1), key(p2));
        let (b0, b1) = minmax(key(q1), key(q2));
        return a0.max(b0) < a1.min(b1);
    }
    false
}

fn minmax(a: f64, b: f64) -> (f64, f64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}
