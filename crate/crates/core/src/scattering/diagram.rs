use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{Automorphism, BiSeries, ScatterError, MAX_ORDER};
use crate::algebra::{format_rational, Rational};
use crate::invariants::omega_from_bar_numeric;

/// A wall: a full line (`incoming`) or a ray from the origin, with a wall
/// function `Σ c_k (x^a y^b)^k` in its primitive direction `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ray {
    direction: (i64, i64),
    incoming: bool,
    function: Vec<Rational>,
}

impl Ray {
    /// `function[k]` is the coefficient of `(x^a y^b)^k`; `function[0]` must be 1.
    pub fn new(direction: (i64, i64), incoming: bool, function: Vec<Rational>) -> Result<Self, ScatterError> {
        let (a, b) = direction;
        if a.gcd(&b) != 1 {
            return Err(ScatterError::NonPrimitiveInput(a, b));
        }
        if a < 0 || b < 0 {
            return Err(ScatterError::InvalidWall(format!("direction ({a}, {b}) leaves the first quadrant")));
        }
        if function.first().map(One::is_one) != Some(true) {
            return Err(ScatterError::InvalidWall("wall function must have constant term 1".into()));
        }
        Ok(Self { direction, incoming, function })
    }

    pub fn direction(&self) -> (i64, i64) {
        self.direction
    }

    pub fn incoming(&self) -> bool {
        self.incoming
    }

    pub fn function(&self) -> &[Rational] {
        &self.function
    }

    fn weight(&self) -> u32 {
        (self.direction.0 + self.direction.1) as u32
    }

    fn as_series(&self, order: u32) -> BiSeries {
        let (a, b) = (self.direction.0 as u32, self.direction.1 as u32);
        let mut s = BiSeries::zero(order);
        for (k, c) in self.function.iter().enumerate() {
            s.set(k as u32 * a, k as u32 * b, c.clone());
        }
        s
    }

    fn truncated(&self, order: u32) -> Self {
        let keep = (order / self.weight()) as usize + 1;
        let mut function = self.function.clone();
        function.truncate(keep);
        Self { function, ..self.clone() }
    }

    /// `log f = Σ_{k>=1} ℓ_k z^k` up to the stored length.
    fn log_coefficients(&self) -> Vec<Rational> {
        let f = &self.function;
        let mut l = vec![Rational::zero(); f.len()];
        // k f_k = Σ_{j=1}^{k} j ℓ_j f_{k-j}
        for k in 1..f.len() {
            let mut acc = Rational::from_integer((k as i64).into()) * &f[k];
            for j in 1..k {
                acc -= Rational::from_integer((j as i64).into()) * &l[j] * &f[k - j];
            }
            l[k] = acc / Rational::from_integer((k as i64).into());
        }
        l
    }
}

fn slope_cmp(u: (i64, i64), v: (i64, i64)) -> Ordering {
    // Angles in [0, π/2]; compare b/a without division.
    (u.1 * v.0).cmp(&(v.1 * u.0))
}

/// A collection of walls with pairing determinant `m`, truncated at `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScatteringDiagram {
    m: u32,
    order: u32,
    rays: Vec<Ray>,
    consistent: bool,
}

impl ScatteringDiagram {
    /// Lines `1 + x` along `(1,0)` and `1 + y` along `(0,1)`.
    pub fn local(m: u32, order: u32) -> Result<Self, ScatterError> {
        Self::with_coefficients(m, Rational::one(), Rational::one(), order)
    }

    /// Lines `1 + c₁x` and `1 + c₂y`, i.e. `s₁ = c₁`, `s₂ = c₂`.
    pub fn with_coefficients(m: u32, c1: Rational, c2: Rational, order: u32) -> Result<Self, ScatterError> {
        let r1 = Ray::new((1, 0), true, vec![Rational::one(), c1])?;
        let r2 = Ray::new((0, 1), true, vec![Rational::one(), c2])?;
        Self::from_incoming(m, [r1, r2], order)
    }

    pub fn from_incoming(m: u32, lines: [Ray; 2], order: u32) -> Result<Self, ScatterError> {
        if m == 0 {
            return Err(ScatterError::ZeroPairing);
        }
        if order > MAX_ORDER {
            return Err(ScatterError::OrderOverflow { order, max: MAX_ORDER });
        }
        let [r1, r2] = lines;
        if r1.direction != (1, 0) || r2.direction != (0, 1) || !r1.incoming || !r2.incoming {
            return Err(ScatterError::InvalidInitial("expected incoming lines along (1,0) and (0,1)".into()));
        }
        if r1.function.len() > 2 || r2.function.len() > 2 {
            return Err(ScatterError::InvalidInitial("incoming wall functions must be linear".into()));
        }
        Ok(Self { m, order, rays: vec![r1.truncated(order), r2.truncated(order)], consistent: false })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    /// Rays sorted by slope, from `(1,0)` to `(0,1)`.
    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    /// Outgoing rays only.
    pub fn outgoing(&self) -> impl Iterator<Item = &Ray> {
        self.rays.iter().filter(|r| !r.incoming)
    }

    pub fn ray(&self, direction: (i64, i64)) -> Option<&Ray> {
        self.rays.iter().find(|r| r.direction == direction)
    }

    fn insert_term(&mut self, u: (i64, i64), c: Rational) {
        let g = u.0.gcd(&u.1);
        let prim = (u.0 / g, u.1 / g);
        let pos = match self.rays.binary_search_by(|r| slope_cmp(r.direction, prim)) {
            Ok(i) => i,
            Err(i) => {
                let ray = Ray { direction: prim, incoming: false, function: vec![Rational::one()] };
                self.rays.insert(i, ray);
                i
            }
        };
        let order = self.order;
        let ray = &mut self.rays[pos];
        let len = (order / ray.weight()) as usize + 1;
        ray.function.resize(len, Rational::zero());
        // f ← f · (1 + c z^g)
        let g = g as usize;
        for k in (g..len).rev() {
            let add = &c * &ray.function[k - g];
            ray.function[k] += add;
        }
    }

    /// Path-ordered product along a counterclockwise loop starting just
    /// below the positive x-axis.
    pub fn path_ordered_product(&self) -> Automorphism {
        // Crossings in path order: (wall, position sign).
        let mut crossings: Vec<(&Ray, bool)> = self.rays.iter().map(|r| (r, true)).collect();
        crossings.extend(self.rays.iter().filter(|r| r.incoming).map(|r| (r, false)));
        let mut acc = Automorphism::identity(self.order);
        for (ray, positive) in crossings.into_iter().rev() {
            acc = acc.compose(&crossing(ray, positive, self.m, self.order));
        }
        acc
    }

    /// Serializable snapshot with nested `{x-exponent: {y-exponent: coeff}}` maps.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct RayOut {
            direction: [i64; 2],
            incoming: bool,
            wall_function: BTreeMap<i64, BTreeMap<i64, String>>,
        }
        #[derive(Serialize)]
        struct Out {
            m: u32,
            order: u32,
            consistent: bool,
            rays: Vec<RayOut>,
        }
        let rays = self
            .rays
            .iter()
            .map(|r| {
                let mut wall_function: BTreeMap<i64, BTreeMap<i64, String>> = BTreeMap::new();
                for (k, c) in r.function.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    let (i, j) = (k as i64 * r.direction.0, k as i64 * r.direction.1);
                    wall_function.entry(i).or_default().insert(j, format_rational(c));
                }
                RayOut { direction: [r.direction.0, r.direction.1], incoming: r.incoming, wall_function }
            })
            .collect();
        serde_json::to_value(Out { m: self.m, order: self.order, consistent: self.consistent, rays })
            .expect("diagram serializes")
    }
}

/// Crossing the half of `ray` on the side `positive` (the ray itself for
/// outgoing rays), counterclockwise: `z^v ↦ z^v f^{⟨p, v⟩}` with `p` the
/// position vector.
fn crossing(ray: &Ray, positive: bool, m: u32, order: u32) -> Automorphism {
    let f = ray.as_series(order);
    let (a, b) = ray.direction;
    let s = if positive { 1 } else { -1 };
    let m = i64::from(m);
    // det(p, e1) = −p_y, det(p, e2) = p_x
    Automorphism { fx: f.pow_int(-s * m * b), fy: f.pow_int(s * m * a) }
}

/// Image of `z^v` under crossing `ray` counterclockwise (or clockwise when
/// `reverse`), as the factor multiplying `z^v`.
pub fn wall_crossing_automorphism(ray: &Ray, m: u32, v: (i64, i64), order: u32, reverse: bool) -> BiSeries {
    crossing(ray, !reverse, m, order).apply_monomial(v.0, v.1)
}

/// Adds outgoing rays until the path-ordered product is the identity to
/// `order`.
pub fn complete_to_consistency(initial: &ScatteringDiagram, order: u32) -> Result<ScatteringDiagram, ScatterError> {
    if order > MAX_ORDER {
        return Err(ScatterError::OrderOverflow { order, max: MAX_ORDER });
    }
    if initial.rays.iter().any(|r| !r.incoming) {
        return Err(ScatterError::InvalidInitial("initial diagram must only contain the two incoming lines".into()));
    }
    let lines: Vec<Ray> = initial.rays.iter().map(|r| Ray { function: r.function[..2.min(r.function.len())].to_vec(), ..r.clone() }).collect();
    let mut diagram = ScatteringDiagram::from_incoming(initial.m, [lines[0].clone(), lines[1].clone()], order)?;
    let m = Rational::from_integer(i64::from(diagram.m).into());
    for k in 2..=order {
        let theta = diagram.path_ordered_product();
        let alpha = theta.fx.degree_part(k);
        let beta: BTreeMap<(u32, u32), Rational> = theta.fy.degree_part(k).into_iter().map(|(i, j, c)| ((i, j), c)).collect();
        let mut terms: BTreeMap<(u32, u32), (Rational, Rational)> = BTreeMap::new();
        for (i, j, c) in alpha {
            terms.insert((i, j), (c, Rational::zero()));
        }
        for (key, c) in beta {
            terms.entry(key).or_insert((Rational::zero(), Rational::zero())).1 = c;
        }
        for ((a, b), (al, be)) in terms {
            let (ra, rb) = (Rational::from_integer(a.into()), Rational::from_integer(b.into()));
            if !(&ra * &al + &rb * &be).is_zero() || a == 0 || b == 0 {
                return Err(ScatterError::Inconsistent {
                    order: k,
                    detail: format!("term x^{a} y^{b} with coefficients ({al}, {be}) is not a wall term"),
                });
            }
            // Crossing (1 + c z^u) on the primitive ray (a', b') shifts the
            // x-factor by −m b' c z^u at leading order.
            let g = a.gcd(&b);
            let c = al / (&m * Rational::from_integer((b / g).into()));
            diagram.insert_term((i64::from(a), i64::from(b)), c);
        }
    }
    if !diagram.path_ordered_product().is_identity() {

        return Err(ScatterError::Inconsistent { order, detail: "path-ordered product is not the identity".into() });
    }
    diagram.consistent = true;
    Ok(diagram)
}

/// Numerical DT invariant `Ω_{(d,d)}(1)` read off the central ray of a
/// completed diagram. With `log f_{(1,1)} = Σ a_k (xy)^k`, the multi-cover
/// averaged invariant is `Ω̄_k(1) = (−1)^{mk+1} a_k / k`, inverted by
/// `Ω̄_k(1) = Σ_{ℓk'=k} Ω_{k'}(1)/ℓ²`.
pub fn central_ray_omega(diagram: &ScatteringDiagram, d: u32) -> Result<Rational, ScatterError> {
    if d == 0 {
        return Err(ScatterError::InvalidInitial("degree must be >= 1".into()));
    }
    let needed = 2 * d;
    if !diagram.consistent || diagram.order < needed {
        return Err(ScatterError::InsufficientOrder { d, needed, available: if diagram.consistent { diagram.order } else { 0 } });
    }
    let logs = diagram.ray((1, 1)).map(Ray::log_coefficients).unwrap_or_default();
    let m = i64::from(diagram.m);
    let bar: BTreeMap<u32, Rational> = (1..=d)
        .map(|k| {
            let a = logs.get(k as usize).cloned().unwrap_or_else(Rational::zero);
            let sign = if (m * i64::from(k) + 1) % 2 == 0 { 1 } else { -1 };
            (k, a * Rational::new(sign.into(), i64::from(k).into()))
        })
        .collect();
    let omega = omega_from_bar_numeric(&bar).expect("keys are 1..=d");
    Ok(omega[&d].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn pentagon() {
        let d = complete_to_consistency(&ScatteringDiagram::local(1, 3).unwrap(), 3).unwrap();
        let out: Vec<_> = d.outgoing().collect();
        assert_eq!(out.len(), 1, "{d:?}");
        assert_eq!(out[0].direction(), (1, 1));
        assert_eq!(out[0].function(), &[int(1), int(1)][..]);
    }

    #[test]
    fn m2_central_tower() {
        let d = complete_to_consistency(&ScatteringDiagram::local(2, 4).unwrap(), 4).unwrap();
        // (1 − xy)^{−2}
        assert_eq!(d.ray((1, 1)).unwrap().function(), &[int(1), int(2), int(3)][..]);
    }

    #[test]
    fn m3_first_order() {
        let d = complete_to_consistency(&ScatteringDiagram::local(3, 2).unwrap(), 2).unwrap();
        assert_eq!(central_ray_omega(&d, 1).unwrap(), int(3));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Ray::new((2, 2), false, vec![int(1)]), Err(ScatterError::NonPrimitiveInput(2, 2)));
        assert!(matches!(ScatteringDiagram::local(3, 99), Err(ScatterError::OrderOverflow { .. })));
        let d = complete_to_consistency(&ScatteringDiagram::local(3, 1).unwrap(), 1).unwrap();
        assert!(matches!(central_ray_omega(&d, 2), Err(ScatterError::InsufficientOrder { needed: 4, .. })));
    }

    #[test]
    fn agrees_with_closed_formula() {
        for m in [3u32, 4] {
            let d = complete_to_consistency(&ScatteringDiagram::local(m, 6).unwrap(), 6).unwrap();
            for deg in 1..=3 {
                let expect = crate::invariants::dt_kronecker_numeric(i64::from(m), i64::from(deg)).unwrap();
                assert_eq!(central_ray_omega(&d, deg).unwrap(), expect, "m={m} d={deg}");
            }
        }
    }

    #[test]
    fn pentagon_has_no_higher_central_terms() {
        let d = complete_to_consistency(&ScatteringDiagram::local(1, 6).unwrap(), 6).unwrap();
        assert_eq!(d.rays().len(), 3);
        assert_eq!(central_ray_omega(&d, 1).unwrap(), int(1));
        for deg in 2..=3 {
            assert_eq!(central_ray_omega(&d, deg).unwrap(), int(0));
        }
    }

    #[test]
    fn mirror_symmetry() {
        let c1 = rat(2, 3);
        let c2 = int(-5);
        for m in 1..=3 {
            let a = complete_to_consistency(&ScatteringDiagram::with_coefficients(m, c1.clone(), c2.clone(), 5).unwrap(), 5).unwrap();
            let b = complete_to_consistency(&ScatteringDiagram::with_coefficients(m, c2.clone(), c1.clone(), 5).unwrap(), 5).unwrap();
            assert_eq!(a.rays().len(), b.rays().len());
            for ray in a.rays() {
                let (x, y) = ray.direction();
                assert_eq!(b.ray((y, x)).unwrap().function(), ray.function(), "m={m} ({x},{y})");
            }
        }
    }

    #[test]
    fn crossing_action() {
        let n = 4;
        let wall = Ray::new((1, 0), true, vec![int(1), int(1)]).unwrap();
        let y_image = wall_crossing_automorphism(&wall, 1, (0, 1), n, false);
        assert_eq!(y_image.coeff(1, 0), int(1));
        assert_eq!(y_image.coeff(2, 0), int(0));
        assert!(wall_crossing_automorphism(&wall, 1, (1, 0), n, false).is_one());
        let there = crossing(&wall, true, 3, n);
        let back = crossing(&wall, false, 3, n);
        assert!(there.compose(&back).is_identity());
        let slanted = Ray::new((2, 1), false, vec![int(1), rat(1, 2), int(3)]).unwrap();
        assert!(crossing(&slanted, true, 2, n).compose(&crossing(&slanted, false, 2, n)).is_identity());
    }

    #[test]
    fn json_dump_is_nested() {
        let d = complete_to_consistency(&ScatteringDiagram::local(1, 3).unwrap(), 3).unwrap();
        let v = d.to_json();
        assert_eq!(v["rays"][1]["direction"], serde_json::json!([1, 1]));
        assert_eq!(v["rays"][1]["wall_function"]["1"]["1"], "1");
        assert_eq!(v["consistent"], true);
    }
}
