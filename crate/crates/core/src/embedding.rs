//! The embedding φ: Z≀Z → F with φ(t) = x₀ and φ(a) = x₁x₂x₁⁻², its caret
//! counts, and the linear-distortion check.

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oracle::{self, Distance, ThompsonGroup, WreathGroup};
use crate::thompson::{fordham_weight, FWord, TreePair};
use crate::wreath::{Variant, WreathElement, WreathNormalForm};

/// φ(a) = x₁ x₂ x₁⁻².
pub fn phi_a() -> TreePair {
    FWord(vec![(1, 1), (2, 1), (1, -2)]).evaluate()
}

pub fn phi_t() -> TreePair {
    TreePair::x_n(0)
}

/// Image of `w` under φ, evaluated along a geodesic word for `w`.
pub fn phi(w: &WreathElement) -> TreePair {
    let (a, t) = (phi_a(), phi_t());
    let mut out = TreePair::identity();
    for syl in w.geodesic_word().syllables() {
        let k = syl
            .exp
            .to_i64()
            .expect("exponent of a tree-pair image fits i64");
        let base = if syl.letter == 'a' { &a } else { &t };
        out = out.multiply(&base.pow(k));
    }
    out
}

/// Normal form of `w` with `aₙ` read as `t⁻ⁿ a tⁿ`.
///
/// φ sends `tⁿ a t⁻ⁿ` below the right arm of the tree for `n ≤ 0` and
/// below the left arm for `n > 0`, so the caret formulas below take their
/// "positive" side (indices `≥ 0`) from the counters at `n ≤ 0`.
pub fn mirrored_normal_form(w: &WreathElement) -> WreathNormalForm {
    let counters = w.counters().iter().map(|(&n, c)| (-n, c.clone()));
    WreathElement::from_parts(counters, w.cursor()).normal_form(Variant::RightFirst)
}

fn require_both_sides(nf: &WreathNormalForm) -> Result<()> {
    if nf.k() == 0 || nf.l() == 0 {
        return Err(Error::OutsideFormulaCase(format!(
            "needs nonzero counters on both sides of the origin (k = {}, l = {})",
            nf.k(),
            nf.l()
        )));
    }
    Ok(())
}

fn mass(nf: &WreathNormalForm) -> (u64, u64) {
    (
        nf.positive_mass().to_u64().expect("counter mass fits u64"),
        nf.negative_mass().to_u64().expect("counter mass fits u64"),
    )
}

fn caret_formula(nf: &WreathNormalForm) -> u64 {
    let (e, f) = mass(nf);
    let (j, m) = (nf.j_l(), nf.cursor);
    if nf.k() == 0 && nf.l() == 0 && m == 0 {
        return 0;
    }
    // right-side carets: the spine down to index i_k, absent with no counters there
    let r = if nf.k() > 0 { nf.i_k() + 1 } else { 0 };
    let base = (r + j + 1) as u64 + e + nf.k() as u64 + f + nf.l() as u64;
    let extra = if m > j {
        (m - j) as u64
    } else if -m > r {
        (-m - r) as u64
    } else {
        0
    };
    base + extra
}

/// Caret count of φ(w) for `k, l ≥ 1`, where `nf` is [`mirrored_normal_form`]:
/// `i_k + j_l + 2 + Σ(|eₙ| + 1) + Σ(|fₙ| + 1)`, plus `m − j_l` when
/// `m > j_l` and `−m − i_k − 1` when `−m > i_k + 1`.
pub fn predicted_caret_count(nf: &WreathNormalForm) -> Result<u64> {
    require_both_sides(nf)?;
    Ok(caret_formula(nf))
}

/// [`predicted_caret_count`] extended to `k = 0` or `l = 0`. With no
/// counters at indices `≥ 0` the right spine disappears, so the count drops
/// by one and the `m < 0` threshold becomes `0`; the identity has 0 carets.
pub fn predicted_caret_count_extended(nf: &WreathNormalForm) -> u64 {
    caret_formula(nf)
}

/// Weight of φ(w) for `m = 0`, `k, l ≥ 1`, with `nf` as in
/// [`predicted_caret_count`]:
/// `2j_l + 2i_k + 2k + 2l + 4Σ|eₙ| + 4Σ|fₙ| − 2`.
pub fn predicted_weight(nf: &WreathNormalForm) -> Result<u64> {
    require_both_sides(nf)?;
    if nf.cursor != 0 {
        return Err(Error::OutsideFormulaCase(format!(
            "weight formula needs cursor 0, got {}",
            nf.cursor
        )));
    }
    let (e, f) = mass(nf);
    let (i, j) = (nf.i_k() as u64, nf.j_l() as u64);
    Ok(2 * j + 2 * i + 2 * nf.k() as u64 + 2 * nf.l() as u64 + 4 * e + 4 * f - 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistortionRecord {
    pub element: WreathNormalForm,
    pub length_h: u64,
    pub caret_count: usize,
    pub predicted_caret_count: Option<u64>,
    pub length_f: Distance,
    pub weight: Option<u64>,
    pub sandwich_ok: bool,
}

impl DistortionRecord {
    /// `extended` switches the prediction to [`predicted_caret_count_extended`]
    /// so that one-sided elements get a value too.
    pub fn new(w: &WreathElement, length_f: Distance, extended: bool) -> Self {
        let image = phi(w);
        let nf = w.normal_form(Variant::RightFirst);
        let mirrored = mirrored_normal_form(w);
        let predicted = if extended {
            Some(predicted_caret_count_extended(&mirrored))
        } else {
            predicted_caret_count(&mirrored).ok()
        };
        let length_h = w.word_length().to_u64().expect("length fits u64");
        let sandwich_ok = match length_f {
            Distance::Exact(d) => {
                let d = d as u64;
                length_h <= d + 2 && d <= 4 * length_h
            }
            Distance::Unknown(_) => false,
        };
        DistortionRecord {
            predicted_caret_count: predicted,
            weight: fordham_weight(&image).ok(),
            caret_count: image.caret_count(),
            element: nf,
            length_h,
            length_f,
            sandwich_ok,
        }
    }

    pub const CSV_HEADER: &'static str =
        "element,len_H,carets,carets_predicted,len_F,weight,sandwich_ok";

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{}",
            self.element,
            self.length_h,
            self.caret_count,
            opt(self.predicted_caret_count),
            self.length_f,
            opt(self.weight),
            self.sandwich_ok
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let opt = |v: Option<u64>| {
            v.map(serde_json::Value::from)
                .unwrap_or(serde_json::Value::Null)
        };
        serde_json::json!({
            "element": self.element.to_string(),
            "len_H": self.length_h,
            "carets": self.caret_count,
            "carets_predicted": opt(self.predicted_caret_count),
            "len_F": self.length_f.to_string(),
            "weight": opt(self.weight),
            "sandwich_ok": self.sandwich_ok,
        })
    }
}

/// One record for every `w` with `|w| ≤ max_len`, with `|φ(w)|_F` looked up
/// in the radius-`bfs_radius` ball of F. Records are ordered by `|w|` and
/// then by the element's canonical text.
pub fn distortion_report(
    max_len: usize,
    bfs_radius: usize,
    limit: usize,
    extended: bool,
) -> Result<Vec<DistortionRecord>> {
    let wreath_ball = oracle::ball(&WreathGroup, max_len, limit)?;
    let mut elements: Vec<WreathElement> = wreath_ball.distances.into_keys().collect();
    elements.sort_by_cached_key(|w| (w.word_length(), w.serialize()));

    let (f_ball, completed) = match oracle::ball(&ThompsonGroup, bfs_radius, limit) {
        Ok(b) => (Some(b), bfs_radius),
        Err(Error::LimitExceeded {
            completed_radius, ..
        }) => (None, completed_radius),
        Err(e) => return Err(e),
    };
    let f_ball = match f_ball {
        Some(b) => b,
        None => oracle::ball(&ThompsonGroup, completed, limit)?,
    };
    let records: Vec<DistortionRecord> = elements
        .par_iter()
        .map(|w| {
            let length_f = match f_ball.distance_of(&phi(w).key()) {
                Some(d) => Distance::Exact(d),
                None => Distance::Unknown(completed as u32),
            };
            DistortionRecord::new(w, length_f, extended)
        })
        .collect();
    if completed < bfs_radius {
        return Err(Error::PartialReport {
            completed_radius: completed,
            records,
        });
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thompson::classify_carets;

    fn el(counters: &[(i64, i64)], m: i64) -> WreathElement {
        WreathElement::from_parts(counters.iter().copied(), m)
    }

    #[test]
    fn generator_images() {
        assert_eq!(phi_a().caret_count(), 4);
        assert_eq!(phi(&WreathElement::a_n(0)), phi_a());
        assert_eq!(phi(&WreathElement::t_power(1)), TreePair::x_n(0));
        assert!(phi(&WreathElement::identity()).is_identity());
    }

    #[test]
    fn phi_is_a_homomorphism_on_samples() {
        let samples = [
            el(&[(0, 1), (-1, 1)], 0),
            el(&[(2, 3), (3, -2), (4, 1), (-3, 2)], -2),
            el(&[(1, -1)], 3),
            el(&[], -4),
        ];
        for u in &samples {
            for v in &samples {
                assert_eq!(phi(&u.multiply(v)), phi(u).multiply(&phi(v)));
            }
        }
    }

    #[test]
    fn images_of_counters_commute() {
        let x = phi(&WreathElement::a_n(2));
        let y = phi(&WreathElement::a_n(-3));
        assert_eq!(x.multiply(&y), y.multiply(&x));
    }

    #[test]
    fn mirrored_form_flips_indices() {
        let nf = mirrored_normal_form(&el(&[(0, 1), (-1, 1)], 2));
        assert_eq!(nf.to_string(), "a_0 a_1 t^2");
        let nf = mirrored_normal_form(&el(&[(2, 1), (-1, -1)], 0));
        assert_eq!(nf.to_string(), "a_1^-1 a_-2");
    }

    #[test]
    fn base_caret_count() {
        // one counter on each side of the tree, cursor at the origin
        let w = el(&[(0, 1), (1, 1)], 0);
        let nf = mirrored_normal_form(&w);
        assert_eq!(predicted_caret_count(&nf).unwrap(), 7);
        assert_eq!(phi(&w).caret_count(), 7);
    }

    #[test]
    fn caret_count_with_cursor() {
        for m in -5..=5 {
            let w = el(&[(-1, 2), (2, -1)], m);
            let nf = mirrored_normal_form(&w);
            assert_eq!(
                predicted_caret_count(&nf).unwrap(),
                phi(&w).caret_count() as u64,
                "m = {m}"
            );
        }
    }

    #[test]
    fn one_sided_elements_need_the_extension() {
        let w = el(&[(0, 1), (-1, 1)], -3);
        let nf = mirrored_normal_form(&w);
        assert!(matches!(
            predicted_caret_count(&nf),
            Err(Error::OutsideFormulaCase(_))
        ));
        assert_eq!(predicted_caret_count_extended(&nf), 8);
        assert_eq!(phi(&w).caret_count(), 8);
        for m in -3..=3 {
            let w = el(&[], m);
            let nf = mirrored_normal_form(&w);
            assert_eq!(
                predicted_caret_count_extended(&nf),
                phi(&w).caret_count() as u64
            );
        }
    }

    #[test]
    fn closed_form_weight_values() {
        let nf = mirrored_normal_form(&el(&[(0, 1), (1, 1)], 0));
        assert_eq!(predicted_weight(&nf).unwrap(), 12);
        let sample = el(&[(2, 3), (3, -2), (4, 1), (-3, 2)], 0);
        assert_eq!(
            predicted_weight(&sample.normal_form(Variant::RightFirst)).unwrap(),
            52
        );
        assert!(predicted_weight(&mirrored_normal_form(&el(&[(0, 1), (1, 1)], 1))).is_err());
    }

    #[test]
    fn pair_types_of_a_small_image() {
        let image = phi(&el(&[(0, 1), (1, 1)], 0));
        let pairs = classify_carets(&image);
        assert_eq!(pairs.len(), 7);
        assert_eq!(fordham_weight(&image).unwrap(), 14);
    }

    #[test]
    fn injective_on_small_ball() {
        let ball = oracle::ball(&WreathGroup, 4, oracle::DEFAULT_LIMIT).unwrap();
        let mut seen = std::collections::HashSet::new();
        for w in ball.distances.keys() {
            assert!(seen.insert(phi(w).key()));
        }
    }
}
