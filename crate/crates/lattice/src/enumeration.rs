use std::cmp::Ordering;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::LatticeError;
use crate::nested::{partial_sums, NestedPartition};
use crate::partition::{Limits, Partition};
use crate::point::LatticePoint;

/// An ordering `u_0, …, u_{d-1}` of the top layer together with the level function `w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Enumeration {
    order: Vec<LatticePoint>,
    w: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EnumerationRepr {
    order: Vec<LatticePoint>,
    w: Vec<usize>,
}

impl<'de> Deserialize<'de> for Enumeration {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = EnumerationRepr::deserialize(deserializer)?;
        Enumeration::new(repr.order, repr.w).map_err(serde::de::Error::custom)
    }
}

impl Enumeration {
    /// Checks that the levels are non-decreasing from 0 and that every
    /// prefix is an order ideal.
    pub fn new(order: Vec<LatticePoint>, w: Vec<usize>) -> Result<Self, LatticeError> {
        let invalid = |msg: String| Err(LatticeError::InvalidPartition(msg));
        if order.is_empty() {
            return invalid("an enumeration needs at least one point".into());
        }
        if order.len() != w.len() {
            return invalid(format!("{} points but {} levels", order.len(), w.len()));
        }
        if w[0] != 0 {
            return invalid("the first point must sit on level 0".into());
        }
        if w.windows(2).any(|p| p[1] < p[0]) {
            return invalid("levels must be non-decreasing".into());
        }
        let n = order[0].dim();
        let mut seen = std::collections::BTreeSet::new();
        for u in &order {
            if u.dim() != n {
                return invalid(format!("point {u} does not have {n} coordinates"));
            }
            if seen.contains(u) {
                return invalid(format!("point {u} appears twice"));
            }
            if let Some(q) = u.predecessors().find(|q| !seen.contains(q)) {
                return invalid(format!("{u} comes before its predecessor {q}"));
            }
            seen.insert(u.clone());
        }
        Ok(Enumeration { order, w })
    }

    pub fn n(&self) -> usize {
        self.order[0].dim()
    }

    /// Number of points `d`.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn order(&self) -> &[LatticePoint] {
        &self.order
    }

    pub fn point(&self, k: usize) -> &LatticePoint {
        &self.order[k]
    }

    pub fn levels(&self) -> &[usize] {
        &self.w
    }

    pub fn w(&self, k: usize) -> usize {
        self.w[k]
    }

    /// Highest level `r` that carries a point.
    pub fn top_level(&self) -> usize {
        *self.w.last().expect("nonempty")
    }

    /// Layer sizes `(d_0, …, d_r)` recovered from the levels.
    pub fn dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.top_level() + 1];
        for &l in &self.w {
            dims[l] += 1;
        }
        dims
    }

    /// Positions `k` with `w(k) = level`.
    pub fn block(&self, level: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |k| self.w[*k] == level)
    }

    pub fn nested(&self) -> NestedPartition {
        let n = self.n();
        let dims = self.dims();
        let sums = partial_sums(&dims);
        let layers = sums[1..]
            .iter()
            .map(|&s| {
                let mut pts = self.order[..s].to_vec();
                pts.sort();
                Partition::new(n, pts).expect("prefixes are order ideals")
            })
            .collect();
        NestedPartition::new(dims, layers).expect("consistent layers")
    }
}

fn level_function(dims: &[usize]) -> Vec<usize> {
    dims.iter().enumerate().flat_map(|(i, d)| std::iter::repeat_n(i, *d)).collect()
}

/// Points of `layer` that are not yet used and whose predecessors all are.
fn available<'a>(layer: &'a Partition, used: &'a [LatticePoint]) -> impl Iterator<Item = &'a LatticePoint> + 'a {
    layer
        .points()
        .iter()
        .filter(move |p| !used.contains(p) && p.predecessors().all(|q| used.contains(&q)))
}

/// The enumeration whose order sequence is smallest, comparing points reverse-lexicographically.
pub fn canonical_enumeration(nested: &NestedPartition) -> Enumeration {
    let dims = nested.dims();
    let mut order: Vec<LatticePoint> = Vec::with_capacity(nested.total());
    for (i, &d) in dims.iter().enumerate() {
        let layer = nested.layer(i + 1);
        for _ in 0..d {
            let next = available(layer, &order)
                .min_by(|a, b| a.revlex_cmp(b))
                .expect("a finite order ideal always has a minimal unused point")
                .clone();
            order.push(next);
        }
    }
    Enumeration {
        order,
        w: level_function(dims),
    }
}

/// Every valid enumeration, sorted by the same comparison as the canonical one.
pub fn all_enumerations(nested: &NestedPartition) -> Result<Vec<Enumeration>, LatticeError> {
    all_enumerations_with(nested, &Limits::default())
}

pub fn all_enumerations_with(nested: &NestedPartition, limits: &Limits) -> Result<Vec<Enumeration>, LatticeError> {
    let d = nested.total();
    if d > limits.max_enumeration_points {
        return Err(LatticeError::SizeGuardExceeded {
            requested: d,
            limit: limits.max_enumeration_points,
        });
    }
    let dims = nested.dims();
    let w = level_function(dims);
    let mut out = Vec::new();
    let mut order = Vec::with_capacity(d);
    extend(nested, &w, &mut order, &mut out);
    out.sort_by(|a: &Vec<LatticePoint>, b| revlex_seq_cmp(a, b));
    Ok(out
        .into_iter()
        .map(|order| Enumeration { order, w: w.clone() })
        .collect())
}

fn extend(nested: &NestedPartition, w: &[usize], order: &mut Vec<LatticePoint>, out: &mut Vec<Vec<LatticePoint>>) {
    if order.len() == w.len() {
        out.push(order.clone());
        return;
    }
    let layer = nested.layer(w[order.len()] + 1);
    let choices: Vec<LatticePoint> = available(layer, order).cloned().collect();
    for p in choices {
        order.push(p);
        extend(nested, w, order, out);
        order.pop();
    }
}

fn revlex_seq_cmp(a: &[LatticePoint], b: &[LatticePoint]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.revlex_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[u32]) -> LatticePoint {
        LatticePoint(c.to_vec())
    }

    #[test]
    fn forced_orders() {
        let chain = NestedPartition::new(
            vec![1, 2],
            vec![
                Partition::new(1, [p(&[0])]).unwrap(),
                Partition::new(1, [p(&[0]), p(&[1]), p(&[2])]).unwrap(),
            ],
        )
        .unwrap();
        let e = canonical_enumeration(&chain);
        assert_eq!(e.order(), &[p(&[0]), p(&[1]), p(&[2])]);
        assert_eq!(e.levels(), &[0, 1, 1]);
        assert_eq!(all_enumerations(&chain).unwrap().len(), 1);
    }

    #[test]
    fn square_has_two_orders() {
        let top = Partition::new(2, [p(&[0, 0]), p(&[1, 0]), p(&[0, 1]), p(&[1, 1])]).unwrap();
        let all = all_enumerations(&NestedPartition::single(top)).unwrap();
        assert_eq!(all.len(), 2);
        assert!(all.iter().all(|e| e.point(3) == &p(&[1, 1])));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let e = Enumeration::new(vec![p(&[0, 0]), p(&[0, 1])], vec![0, 1]).unwrap();
        let text = serde_json::to_string(&e).unwrap();
        assert_eq!(text, r#"{"order":[[0,0],[0,1]],"w":[0,1]}"#);
        assert_eq!(serde_json::from_str::<Enumeration>(&text).unwrap(), e);
        assert!(serde_json::from_str::<Enumeration>(r#"{"order":[[0,1],[0,0]],"w":[0,0]}"#).is_err());
        assert!(serde_json::from_str::<Enumeration>(r#"{"order":[[0,0],[0,1]],"w":[1,0]}"#).is_err());
    }
}
