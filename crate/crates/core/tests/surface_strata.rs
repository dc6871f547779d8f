//! Genus and zero orders of glued polygons against closed forms and an
//! independent Euler-characteristic count.

use dq_core::atlas::{ingest_polygon, PolygonGluing};
use dq_core::ExactComplex;
use proptest::prelude::*;

/// Vertex classes by walking corner identifications one step at a time.
fn vertex_count(pg: &PolygonGluing) -> usize {
    let n = pg.edges.len();
    let mut neighbours = vec![Vec::new(); n];
    for &(i, j) in &pg.pairing {
        for (a, b) in [(i, (j + 1) % n), ((i + 1) % n, j)] {
            neighbours[a].push(b);
            neighbours[b].push(a);
        }
    }
    let mut seen = vec![false; n];
    let mut classes = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        classes += 1;
        let mut stack = vec![start];
        while let Some(k) = stack.pop() {
            if !std::mem::replace(&mut seen[k], true) {
                stack.extend(neighbours[k].iter().copied());
            }
        }
    }
    classes
}

/// Convex centrally symmetric `2n`-gon from `n` directions in the open
/// upper half plane (plus the positive real axis), opposite sides glued.
fn symmetric_polygon(mut dirs: Vec<(i64, i64)>) -> Option<PolygonGluing> {
    let key = |&(x, y): &(i64, i64)| (y as f64).atan2(x as f64);
    dirs.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
    for w in dirs.windows(2) {
        if w[0].0 * w[1].1 - w[0].1 * w[1].0 == 0 {
            return None;
        }
    }
    let n = dirs.len();
    let mut edges: Vec<ExactComplex> = dirs
        .iter()
        .map(|&(x, y)| ExactComplex::gaussian(x, 1, y, 1))
        .collect();
    edges.extend(
        dirs.iter()
            .map(|&(x, y)| ExactComplex::gaussian(-x, 1, -y, 1)),
    );
    Some(PolygonGluing::new(
        edges,
        (0..n).map(|k| (k, k + n)).collect(),
    ))
}

fn direction() -> impl Strategy<Value = (i64, i64)> {
    (-5i64..=5, 0i64..=5).prop_filter("upper half plane", |&(x, y)| y > 0 || x > 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetric_polygons_have_the_expected_stratum(dirs in prop::collection::vec(direction(), 2..=7)) {
        let n = dirs.len();
        let Some(pg) = symmetric_polygon(dirs) else { return Ok(()); };
        let s = ingest_polygon(&pg).unwrap();
        let v = vertex_count(&pg);
        // V − E + F with E = n glued edges, F = 1
        let euler = v as i64 - n as i64 + 1;
        prop_assert_eq!(2 - 2 * s.genus as i64, euler);
        if n % 2 == 0 {
            prop_assert_eq!(s.genus as usize, n / 2);
            let expected: Vec<u32> = if n == 2 { vec![] } else { vec![n as u32 - 2] };
            prop_assert_eq!(s.zero_orders(), expected);
        } else {
            prop_assert_eq!(s.genus as usize, (n - 1) / 2);
            let k = (n as u32 - 3) / 2;
            let expected: Vec<u32> = if k == 0 { vec![] } else { vec![k, k] };
            prop_assert_eq!(s.zero_orders(), expected);
        }
        prop_assert_eq!(s.zero_orders().iter().sum::<u32>() + 2, 2 * s.genus);
        prop_assert!(s.cocycle_residuals().iter().all(ExactComplex::is_zero));
    }
}

#[test]
fn builtin_surfaces() {
    let expected = [
        (PolygonGluing::square(), 1, vec![]),
        (PolygonGluing::octagon(), 2, vec![2]),
        (PolygonGluing::l_shape(), 2, vec![2]),
        (PolygonGluing::double_pentagon(), 2, vec![2]),
    ];
    for (pg, genus, orders) in expected {
        let s = ingest_polygon(&pg).unwrap();
        assert_eq!(s.genus, genus);
        assert_eq!(s.zero_orders(), orders);
        assert_eq!(
            2 - 2 * genus as i64,
            vertex_count(&pg) as i64 - pg.edges.len() as i64 / 2 + 1
        );
    }
}

#[test]
fn non_convex_corner_angles_are_counted() {
    // L-shape: the reflex corner contributes 3π/2 to the single cone point
    let s = ingest_polygon(&PolygonGluing::l_shape()).unwrap();
    assert_eq!(
        s.classes.iter().map(|c| c.angle_turns).collect::<Vec<_>>(),
        vec![3]
    );
}
