//! Breadth-first Cayley balls: ground-truth word lengths for any group with
//! canonical element forms.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use rayon::prelude::*;

use crate::baumslag::{self, BaumslagElement};
use crate::error::{Error, Result};
use crate::thompson::{self, PairKey, TreePair};
use crate::wreath::{self, WreathElement};

pub const DEFAULT_LIMIT: usize = 50_000_000;

const CHUNK: usize = 4096;

/// A group presented by a finite generating set closed under inversion and
/// an injective, hashable key for its elements.
pub trait CayleyGroup: Sync {
    type Element: Clone + Send + Sync;
    type Key: Clone + Eq + Hash + Send + Sync;

    fn identity(&self) -> Self::Element;
    fn generator_labels(&self) -> Vec<&'static str>;
    /// `element · generator[index]`.
    fn apply(&self, element: &Self::Element, generator: usize) -> Self::Element;
    fn key(&self, element: &Self::Element) -> Self::Key;
    /// Canonical text for the element behind a key.
    fn describe(&self, key: &Self::Key) -> String;
}

pub struct WreathGroup;

impl CayleyGroup for WreathGroup {
    type Element = WreathElement;
    type Key = WreathElement;

    fn identity(&self) -> WreathElement {
        WreathElement::identity()
    }

    fn generator_labels(&self) -> Vec<&'static str> {
        wreath::Generator::ALL.iter().map(|g| g.label()).collect()
    }

    fn apply(&self, element: &WreathElement, generator: usize) -> WreathElement {
        element.apply_generator(wreath::Generator::ALL[generator])
    }

    fn key(&self, element: &WreathElement) -> WreathElement {
        element.clone()
    }

    fn describe(&self, key: &WreathElement) -> String {
        key.serialize()
    }
}

/// Thompson's group over `{x₀^±1, x₁^±1}`.
pub struct ThompsonGroup;

impl CayleyGroup for ThompsonGroup {
    type Element = TreePair;
    type Key = PairKey;

    fn identity(&self) -> TreePair {
        TreePair::identity()
    }

    fn generator_labels(&self) -> Vec<&'static str> {
        thompson::Generator::ALL.iter().map(|g| g.label()).collect()
    }

    fn apply(&self, element: &TreePair, generator: usize) -> TreePair {
        element.apply_generator(thompson::Generator::ALL[generator])
    }

    fn key(&self, element: &TreePair) -> PairKey {
        element.key()
    }

    fn describe(&self, key: &PairKey) -> String {
        TreePair::from_key(key).serialize()
    }
}

pub struct BaumslagGroup;

impl CayleyGroup for BaumslagGroup {
    type Element = BaumslagElement;
    type Key = BaumslagElement;

    fn identity(&self) -> BaumslagElement {
        BaumslagElement::identity()
    }

    fn generator_labels(&self) -> Vec<&'static str> {
        baumslag::Generator::ALL.iter().map(|g| g.label()).collect()
    }

    fn apply(&self, element: &BaumslagElement, generator: usize) -> BaumslagElement {
        element.apply_generator(baumslag::Generator::ALL[generator])
    }

    fn key(&self, element: &BaumslagElement) -> BaumslagElement {
        element.clone()
    }

    fn describe(&self, key: &BaumslagElement) -> String {
        key.serialize()
    }
}

/// Permutes the generator order of another group; the ball is unchanged.
pub struct Reordered<'a, G> {
    pub inner: &'a G,
    pub order: Vec<usize>,
}

impl<G: CayleyGroup> CayleyGroup for Reordered<'_, G> {
    type Element = G::Element;
    type Key = G::Key;

    fn identity(&self) -> G::Element {
        self.inner.identity()
    }

    fn generator_labels(&self) -> Vec<&'static str> {
        let labels = self.inner.generator_labels();
        self.order.iter().map(|&i| labels[i]).collect()
    }

    fn apply(&self, element: &G::Element, generator: usize) -> G::Element {
        self.inner.apply(element, self.order[generator])
    }

    fn key(&self, element: &G::Element) -> G::Key {
        self.inner.key(element)
    }

    fn describe(&self, key: &G::Key) -> String {
        self.inner.describe(key)
    }
}

#[derive(Clone, Debug)]
pub struct Ball<K> {
    pub radius: usize,
    pub distances: HashMap<K, u32>,
    /// `sphere_sizes[r]` elements lie at distance exactly `r`.
    pub sphere_sizes: Vec<usize>,
}

impl<K: Eq + Hash> Ball<K> {
    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }

    pub fn distance_of(&self, key: &K) -> Option<u32> {
        self.distances.get(key).copied()
    }

    /// `(canonical text, distance)` rows sorted by distance then text.
    pub fn rows<G: CayleyGroup<Key = K>>(&self, group: &G) -> Vec<(String, u32)> {
        let mut rows: Vec<(String, u32)> = self
            .distances
            .iter()
            .map(|(k, &d)| (group.describe(k), d))
            .collect();
        rows.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        rows
    }
}

/// Word length, or a lower bound when the search radius ran out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Distance {
    Exact(u32),
    /// Greater than the given radius.
    Unknown(u32),
}

impl Distance {
    pub fn exact(self) -> Option<u32> {
        match self {
            Distance::Exact(d) => Some(d),
            Distance::Unknown(_) => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(d) => write!(f, "{d}"),
            Distance::Unknown(r) => write!(f, ">{r}"),
        }
    }
}

/// Level-synchronous search. Neighbours of each frontier chunk are computed
/// in parallel and merged in frontier order, so the outcome does not depend
/// on the thread count. `visit` sees each new key with its distance and may
/// stop the search by returning `true`.
fn search<G, F>(group: &G, radius: usize, limit: usize, mut visit: F) -> Result<Ball<G::Key>>
where
    G: CayleyGroup,
    F: FnMut(&G::Key, u32) -> bool,
{
    let gens = group.generator_labels().len();
    let id = group.identity();
    let id_key = group.key(&id);
    let mut distances = HashMap::new();
    distances.insert(id_key.clone(), 0u32);
    let mut sphere_sizes = vec![1];
    if visit(&id_key, 0) {
        return Ok(Ball {
            radius: 0,
            distances,
            sphere_sizes,
        });
    }
    let mut frontier = vec![id];
    for r in 1..=radius {
        let mut next = Vec::new();
        for chunk in frontier.chunks(CHUNK) {
            let expanded: Vec<Vec<(G::Key, G::Element)>> = chunk
                .par_iter()
                .map(|e| {
                    (0..gens)
                        .map(|g| {
                            let n = group.apply(e, g);
                            (group.key(&n), n)
                        })
                        .collect()
                })
                .collect();
            for (key, element) in expanded.into_iter().flatten() {
                if distances.contains_key(&key) {
                    continue;
                }
                if distances.len() >= limit {
                    return Err(Error::LimitExceeded {
                        limit,
                        completed_radius: r - 1,
                        sphere_sizes,
                    });
                }
                let stop = visit(&key, r as u32);
                distances.insert(key, r as u32);
                next.push(element);
                if stop {
                    sphere_sizes.push(next.len());
                    return Ok(Ball {
                        radius: r,
                        distances,
                        sphere_sizes,
                    });
                }
            }
        }
        sphere_sizes.push(next.len());
        frontier = next;
    }
    Ok(Ball {
        radius,
        distances,
        sphere_sizes,
    })
}

/// The full ball of the given radius around the identity.
pub fn ball<G: CayleyGroup>(group: &G, radius: usize, limit: usize) -> Result<Ball<G::Key>> {
    search(group, radius, limit, |_, _| false)
}

/// Distance from the identity to `target`, searching out to `max_radius`.
pub fn distance<G: CayleyGroup>(
    group: &G,
    target: &G::Element,
    max_radius: usize,
    limit: usize,
) -> Result<Distance> {
    let target = group.key(target);
    let mut found = None;
    search(group, max_radius, limit, |k, d| {
        if *k == target {
            found = Some(d);
            true
        } else {
            false
        }
    })?;
    Ok(match found {
        Some(d) => Distance::Exact(d),
        None => Distance::Unknown(max_radius as u32),
    })
}

/// Checks that every element at distance `d > 0` has a neighbour at `d − 1`
/// and that no two neighbours differ by more than one.
pub fn audit<G: CayleyGroup>(group: &G, ball: &Ball<G::Key>, elements: &[G::Element]) -> bool {
    let gens = group.generator_labels().len();
    elements.iter().all(|e| {
        let Some(d) = ball.distance_of(&group.key(e)) else {
            return false;
        };
        let mut has_parent = d == 0;
        for g in 0..gens {
            if let Some(dn) = ball.distance_of(&group.key(&group.apply(e, g))) {
                if dn.abs_diff(d) > 1 {
                    return false;
                }
                has_parent |= dn + 1 == d;
            } else if (d as usize) < ball.radius {
                return false;
            }
        }
        has_parent
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_zero() {
        let b = ball(&WreathGroup, 0, DEFAULT_LIMIT).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b.distance_of(&WreathElement::identity()), Some(0));
        assert_eq!(b.sphere_sizes, [1]);
    }

    #[test]
    fn wreath_first_spheres() {
        let b = ball(&WreathGroup, 2, DEFAULT_LIMIT).unwrap();
        // a^±1, t^±1; then the 12 reduced words of length 2, all distinct.
        assert_eq!(b.sphere_sizes, [1, 4, 12]);
    }

    #[test]
    fn distance_finds_targets() {
        let id = WreathElement::identity();
        assert_eq!(
            distance(&WreathGroup, &id, 5, DEFAULT_LIMIT).unwrap(),
            Distance::Exact(0)
        );
        let t3 = WreathElement::t_power(3);
        assert_eq!(
            distance(&WreathGroup, &t3, 5, DEFAULT_LIMIT).unwrap(),
            Distance::Exact(3)
        );
        assert_eq!(
            distance(&WreathGroup, &t3, 2, DEFAULT_LIMIT).unwrap(),
            Distance::Unknown(2)
        );
    }

    #[test]
    fn limit_reports_completed_radius() {
        match ball(&WreathGroup, 5, 10) {
            Err(Error::LimitExceeded {
                completed_radius,
                sphere_sizes,
                ..
            }) => {
                assert_eq!(completed_radius, 1);
                assert_eq!(sphere_sizes, [1, 4]);
            }
            other => panic!("expected LimitExceeded, got {other:?}"),
        }
    }

    #[test]
    fn key_round_trip_for_tree_pairs() {
        let p = TreePair::x_n(3).multiply(&TreePair::x_n(0).inverse());
        assert_eq!(TreePair::from_key(&p.key()), p);
        assert_eq!(ThompsonGroup.describe(&p.key()), p.serialize());
    }
}
