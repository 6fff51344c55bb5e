//! Convex hull and rotating calipers for the large-set diameter path.

use crate::geometry::ComplexPoint;

fn cross(o: ComplexPoint, a: ComplexPoint, b: ComplexPoint) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Strictly convex hull in counter-clockwise order, as indices into `points`.
/// Coincident points are represented by their smallest index.
pub(crate) fn convex_hull(points: &[ComplexPoint]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (points[i], points[j]);
        a.re.total_cmp(&b.re)
            .then(a.im.total_cmp(&b.im))
            .then(i.cmp(&j))
    });
    order.dedup_by(|later, earlier| points[*later] == points[*earlier]);
    if order.len() < 3 {
        return order;
    }

    let mut hull: Vec<usize> = Vec::with_capacity(2 * order.len());
    // lower chain
    for &i in &order {
        while hull.len() >= 2
            && cross(points[hull[hull.len() - 2]], points[hull[hull.len() - 1]], points[i]) <= 0.0
        {
            hull.pop();
        }
        hull.push(i);
    }
    // upper chain
    let lower = hull.len() + 1;
    for &i in order.iter().rev().skip(1) {
        while hull.len() >= lower
            && cross(points[hull[hull.len() - 2]], points[hull[hull.len() - 1]], points[i]) <= 0.0
        {
            hull.pop();
        }
        hull.push(i);
    }
    hull.pop();
    hull
}

/// Diametral pair via rotating calipers; returns `(i, j, squared distance)`
/// with `i ≤ j` and the lexicographically smallest pair among exact ties.
pub(crate) fn calipers_diametral(points: &[ComplexPoint]) -> (usize, usize, f64) {
    let hull = convex_hull(points);
    let n = hull.len();
    match n {
        0 => unreachable!("hull of a non-empty set"),
        1 => return (hull[0], hull[0], 0.0),
        2 => {
            let (a, b) = ordered(hull[0], hull[1]);
            return (a, b, points[a].dist_sqr(points[b]));
        }
        _ => {}
    }

    let p = |k: usize| points[hull[k % n]];
    let mut best_d2 = f64::NEG_INFINITY;
    let mut best_pair = (usize::MAX, usize::MAX);
    let mut consider = |a: usize, b: usize| {
        let (a, b) = ordered(hull[a % n], hull[b % n]);
        if a == b {
            return;
        }
        let d2 = points[a].dist_sqr(points[b]);
        if d2 > best_d2 || (d2 == best_d2 && (a, b) < best_pair) {
            best_d2 = d2;
            best_pair = (a, b);
        }
    };

    let mut j = 1;
    for i in 0..n {
        // advance while the triangle area over edge (i, i+1) keeps growing
        while cross(p(i), p(i + 1), p(j + 1)) > cross(p(i), p(i + 1), p(j)) {
            j += 1;
        }
        consider(i, j);
        consider(i + 1, j);
        consider(i, j + 1);
        consider(i + 1, j + 1);
    }
    (best_pair.0, best_pair.1, best_d2)
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}
