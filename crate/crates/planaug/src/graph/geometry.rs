//! Exact orientation predicates on rational points.
//!
//! Points are scaled to a common denominator once. Coordinates that fit in
//! 62 bits go through an `i128` determinant, anything larger through `BigInt`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rational point `(x_num/x_den, y_num/y_den)`, kept reduced with positive
/// denominators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatPoint {
    pub x_num: i64,
    pub x_den: i64,
    pub y_num: i64,
    pub y_den: i64,
}

fn reduce(num: i64, den: i64) -> Result<(i64, i64)> {
    if den == 0 {
        return Err(Error::Validation("zero denominator".into()));
    }
    let g = num.gcd(&den).max(1);
    let (mut n, mut d) = (num / g, den / g);
    if d < 0 {
        n = -n;
        d = -d;
    }
    Ok((n, d))
}

impl RatPoint {
    pub fn new(x_num: i64, x_den: i64, y_num: i64, y_den: i64) -> Result<Self> {
        let (x_num, x_den) = reduce(x_num, x_den)?;
        let (y_num, y_den) = reduce(y_num, y_den)?;
        Ok(RatPoint {
            x_num,
            x_den,
            y_num,
            y_den,
        })
    }

    pub fn int(x: i64, y: i64) -> Self {
        RatPoint {
            x_num: x,
            x_den: 1,
            y_num: y,
            y_den: 1,
        }
    }

    pub fn as_array(&self) -> [i64; 4] {
        [self.x_num, self.x_den, self.y_num, self.y_den]
    }

    /// Compares x-coordinates exactly.
    pub fn cmp_x(&self, other: &RatPoint) -> Ordering {
        let a = self.x_num as i128 * other.x_den as i128;
        let b = other.x_num as i128 * self.x_den as i128;
        a.cmp(&b)
    }

    pub fn cmp_y(&self, other: &RatPoint) -> Ordering {
        let a = self.y_num as i128 * other.y_den as i128;
        let b = other.y_num as i128 * self.y_den as i128;
        a.cmp(&b)
    }
}

#[derive(Clone, Debug)]
enum Coords {
    Small(Vec<(i64, i64)>),
    Big(Vec<(BigInt, BigInt)>),
}

/// A point set scaled to integers, ready for exact predicates.
#[derive(Clone, Debug)]
pub struct IntPoints {
    coords: Coords,
}

const SMALL_LIMIT: i64 = 1 << 62;

impl IntPoints {
    pub fn new(points: &[RatPoint]) -> Self {
        let mut lx = BigInt::one();
        let mut ly = BigInt::one();
        for p in points {
            lx = lx.lcm(&BigInt::from(p.x_den));
            ly = ly.lcm(&BigInt::from(p.y_den));
        }
        let big: Vec<(BigInt, BigInt)> = points
            .iter()
            .map(|p| {
                (
                    BigInt::from(p.x_num) * (&lx / BigInt::from(p.x_den)),
                    BigInt::from(p.y_num) * (&ly / BigInt::from(p.y_den)),
                )
            })
            .collect();
        let limit = BigInt::from(SMALL_LIMIT);
        if big.iter().all(|(x, y)| x.abs() < limit && y.abs() < limit) {
            let small = big
                .iter()
                .map(|(x, y)| (x.to_i64().unwrap(), y.to_i64().unwrap()))
                .collect();
            IntPoints {
                coords: Coords::Small(small),
            }
        } else {
            IntPoints {
                coords: Coords::Big(big),
            }
        }
    }

    pub fn len(&self) -> usize {
        match &self.coords {
            Coords::Small(v) => v.len(),
            Coords::Big(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn uses_bigint(&self) -> bool {
        matches!(self.coords, Coords::Big(_))
    }

    /// Sign of the cross product `(b - a) x (c - a)`: `Greater` for a left
    /// turn (counterclockwise).
    pub fn orient(&self, a: usize, b: usize, c: usize) -> Ordering {
        match &self.coords {
            Coords::Small(p) => {
                let (ax, ay) = (p[a].0 as i128, p[a].1 as i128);
                let (bx, by) = (p[b].0 as i128, p[b].1 as i128);
                let (cx, cy) = (p[c].0 as i128, p[c].1 as i128);
                let d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
                d.cmp(&0)
            }
            Coords::Big(p) => {
                let d = (&p[b].0 - &p[a].0) * (&p[c].1 - &p[a].1) - (&p[b].1 - &p[a].1) * (&p[c].0 - &p[a].0);
                d.cmp(&BigInt::zero())
            }
        }
    }

    /// Same as `orient` but errors on collinear input.
    pub fn orient_strict(&self, a: usize, b: usize, c: usize) -> Result<Ordering> {
        match self.orient(a, b, c) {
            Ordering::Equal => Err(Error::Degenerate(format!("points {a}, {b}, {c} are collinear"))),
            o => Ok(o),
        }
    }

    /// Proper interior crossing of segments `ab` and `cd`. Shared endpoints
    /// never count. Collinear triples are reported as errors.
    pub fn segments_cross(&self, a: usize, b: usize, c: usize, d: usize) -> Result<bool> {
        if a == c || a == d || b == c || b == d {
            return Ok(false);
        }
        let o1 = self.orient_strict(a, b, c)?;
        let o2 = self.orient_strict(a, b, d)?;
        if o1 == o2 {
            return Ok(false);
        }
        let o3 = self.orient_strict(c, d, a)?;
        let o4 = self.orient_strict(c, d, b)?;
        Ok(o3 != o4)
    }

    /// Quadrant-based exact comparison of directions `a->b` and `a->c` by
    /// counterclockwise angle starting from the positive x-axis.
    pub fn cmp_angle(&self, a: usize, b: usize, c: usize) -> Ordering {
        let hb = self.half(a, b);
        let hc = self.half(a, c);
        if hb != hc {
            return hb.cmp(&hc);
        }
        // same half-plane: b before c iff c is to the left of a->b
        match self.orient(a, b, c) {
            Ordering::Greater => Ordering::Less,
            Ordering::Less => Ordering::Greater,
            Ordering::Equal => Ordering::Equal,
        }
    }

    fn half(&self, a: usize, b: usize) -> u8 {
        let (dx, dy) = match &self.coords {
            Coords::Small(p) => (
                (p[b].0 as i128 - p[a].0 as i128).signum(),
                (p[b].1 as i128 - p[a].1 as i128).signum(),
            ),
            Coords::Big(p) => {
                let s = |x: BigInt| {
                    if x.is_positive() {
                        1
                    } else if x.is_negative() {
                        -1
                    } else {
                        0
                    }
                };
                (s(&p[b].0 - &p[a].0), s(&p[b].1 - &p[a].1))
            }
        };
        if dy > 0 || (dy == 0 && dx > 0) {
            0
        } else {
            1
        }
    }
}

/// Checks that no three points are collinear. Cubic.
pub fn check_general_position(p: &IntPoints) -> Result<()> {
    let n = p.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                p.orient_strict(a, b, c)?;
            }
        }
    }
    Ok(())
}
