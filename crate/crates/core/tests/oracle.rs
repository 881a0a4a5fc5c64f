use wreath_distortion::oracle::{
    self, CayleyGroup, Distance, Reordered, ThompsonGroup, WreathGroup, DEFAULT_LIMIT,
};
use wreath_distortion::wreath::WreathElement;
use wreath_distortion::Error;

#[test]
fn radius_zero_is_the_identity() {
    let ball = oracle::ball(&WreathGroup, 0, DEFAULT_LIMIT).unwrap();
    assert_eq!(ball.len(), 1);
    assert_eq!(ball.distance_of(&WreathElement::identity()), Some(0));
}

#[test]
fn first_spheres_of_z_wr_z() {
    let ball = oracle::ball(&WreathGroup, 4, DEFAULT_LIMIT).unwrap();
    assert_eq!(&ball.sphere_sizes[..2], &[1, 4]);
    assert_eq!(ball.sphere_sizes.iter().sum::<usize>(), ball.len());
}

#[test]
fn generator_order_does_not_change_the_ball() {
    let plain = oracle::ball(&ThompsonGroup, 6, DEFAULT_LIMIT).unwrap();
    let shuffled = Reordered {
        inner: &ThompsonGroup,
        order: vec![3, 1, 0, 2],
    };
    let other = oracle::ball(&shuffled, 6, DEFAULT_LIMIT).unwrap();
    assert_eq!(plain.rows(&ThompsonGroup), other.rows(&shuffled));
    assert_eq!(plain.sphere_sizes, other.sphere_sizes);
}

#[test]
fn distances_are_symmetric_and_subadditive() {
    let group = WreathGroup;
    let ball = oracle::ball(&group, 6, DEFAULT_LIMIT).unwrap();
    let elements: Vec<&WreathElement> = ball
        .distances
        .keys()
        .filter(|w| ball.distances[*w] <= 3)
        .collect();
    for u in elements.iter().take(200) {
        let du = ball.distances[*u];
        assert_eq!(ball.distance_of(&u.inverse()), Some(du));
        for v in elements.iter().take(50) {
            let uv = u.multiply(v);
            assert!(ball.distances[&uv] <= du + ball.distances[*v]);
        }
    }
}

#[test]
fn neighbouring_distances_differ_by_at_most_one() {
    let ball = oracle::ball(&ThompsonGroup, 7, DEFAULT_LIMIT).unwrap();
    let inner = oracle::ball(&ThompsonGroup, 6, DEFAULT_LIMIT).unwrap();
    let elements: Vec<_> = inner
        .distances
        .keys()
        .map(wreath_distortion::thompson::TreePair::from_key)
        .collect();
    assert!(oracle::audit(&ThompsonGroup, &ball, &elements));
}

#[test]
fn distance_search() {
    let sample = WreathElement::evaluate_word("t^2 a^3 t a^-2 t a t^-7 a^2 t").unwrap();
    assert_eq!(
        oracle::distance(&WreathGroup, &WreathElement::identity(), 3, DEFAULT_LIMIT).unwrap(),
        Distance::Exact(0)
    );
    assert_eq!(
        oracle::distance(&WreathGroup, &sample, 4, DEFAULT_LIMIT).unwrap(),
        Distance::Unknown(4)
    );
    let g = WreathGroup;
    let t3 = g.apply(&g.apply(&g.apply(&g.identity(), 2), 2), 2);
    assert_eq!(
        oracle::distance(&g, &t3, 5, DEFAULT_LIMIT).unwrap(),
        Distance::Exact(3)
    );
}

#[test]
fn limit_reports_partial_radius() {
    match oracle::ball(&WreathGroup, 5, 10) {
        Err(Error::LimitExceeded {
            completed_radius,
            sphere_sizes,
            ..
        }) => {
            assert_eq!(completed_radius, 1);
            assert_eq!(sphere_sizes, vec![1, 4]);
        }
        other => panic!("expected LimitExceeded, got {other:?}"),
    }
}
