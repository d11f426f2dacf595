//! Independent reference computations used by the integration tests.
//!
//! Nothing here calls into the polyhedral or normal-form code of the crate:
//! volumes come from convex hulls in plain integer arithmetic and mixed
//! volumes from the inclusion-exclusion formula over Minkowski sums.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// Determinant by cofactor expansion.
pub fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0] as i128;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] as i128 * det(&minor)
        })
        .sum()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn cross2(o: &[i64], a: &[i64], b: &[i64]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Vertices of the convex hull of planar points in counterclockwise order
/// (monotone chain).
pub fn hull2(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut pts: Vec<Vec<i64>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if pts.len() < 3 {
        return pts;
    }
    pts.sort();
    let mut lower: Vec<Vec<i64>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross2(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<i64>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross2(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Twice the area of the convex hull of planar points.
fn area2(points: &[Vec<i64>]) -> i128 {
    let h = hull2(points);
    if h.len() < 3 {
        return 0;
    }
    (1..h.len() - 1).map(|i| cross2(&h[0], &h[i], &h[i + 1]) as i128).sum()
}

fn cross3(a: &[i64], b: &[i64]) -> [i64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot3(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Six times the volume of the convex hull of points in space.
///
/// Facets are found by brute force over point triples; each facet polygon
/// is projected to the coordinate plane its normal is least parallel to,
/// hulled there and fanned into triangles, which are coned to one hull
/// vertex.
fn volume6(points: &[Vec<i64>]) -> i128 {
    let pts: Vec<Vec<i64>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let n = pts.len();
    let apex = &pts[0];
    let mut seen = BTreeSet::new();
    let mut total: i128 = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let normal = cross3(&sub(&pts[j], &pts[i]), &sub(&pts[k], &pts[i]));
                if normal == [0, 0, 0] {
                    continue;
                }
                let offset = dot3(&normal, &pts[i]);
                let sides: Vec<i64> = pts.iter().map(|p| (dot3(&normal, p) - offset).signum()).collect();
                let (pos, neg) = (sides.contains(&1), sides.contains(&-1));
                if pos && neg {
                    continue;
                }
                if !pos && !neg {
                    // All points coplanar.
                    return 0;
                }
                let g = normal.iter().fold(0i64, |g, &v| num_integer::gcd(g, v.abs()));
                let sign = if pos { -1 } else { 1 };
                let key: Vec<i64> = normal.iter().map(|v| sign * v / g).chain([sign * offset / g]).collect();
                if !seen.insert(key) {
                    continue;
                }
                let on: Vec<&Vec<i64>> = pts.iter().zip(&sides).filter(|(_, &s)| s == 0).map(|(p, _)| p).collect();
                let drop = (0..3).max_by_key(|&c| normal[c].abs()).unwrap();
                let keep: Vec<usize> = (0..3).filter(|&c| c != drop).collect();
                let projected: Vec<Vec<i64>> = on.iter().map(|p| keep.iter().map(|&c| p[c]).collect()).collect();
                let ring = hull2(&projected);
                let lift = |q: &Vec<i64>| on[projected.iter().position(|p| p == q).unwrap()].clone();
                for t in 1..ring.len() - 1 {
                    let (a, b, c) = (lift(&ring[0]), lift(&ring[t]), lift(&ring[t + 1]));
                    let m = vec![sub(&a, apex), sub(&b, apex), sub(&c, apex)];
                    total += det(&m).abs();
                }
            }
        }
    }
    total
}

/// `d! * Vol(conv(points))` for points in dimension 1, 2 or 3.
pub fn normalized_volume(points: &[Vec<i64>]) -> i128 {
    match points[0].len() {
        1 => {
            let (lo, hi) = (points.iter().map(|p| p[0]).min().unwrap(), points.iter().map(|p| p[0]).max().unwrap());
            (hi - lo) as i128
        }
        2 => area2(points),
        3 => volume6(points),
        d => panic!("volume oracle only covers dimensions 1 to 3, got {d}"),
    }
}

pub fn minkowski_sum(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let set: BTreeSet<Vec<i64>> =
        a.iter().flat_map(|p| b.iter().map(move |q| p.iter().zip(q).map(|(x, y)| x + y).collect())).collect();
    set.into_iter().collect()
}

/// Mixed volume of `polytopes` (one per coordinate) normalized to count
/// torus solutions: the alternating sum of normalized volumes of all
/// partial Minkowski sums.
pub fn mixed_volume_oracle(polytopes: &[Vec<Vec<i64>>]) -> i128 {
    let n = polytopes.len();
    let mut total = 0;
    for mask in 1u32..(1 << n) {
        let chosen: Vec<&Vec<Vec<i64>>> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| &polytopes[i]).collect();
        let mut sum = chosen[0].clone();
        for p in &chosen[1..] {
            sum = minkowski_sum(&sum, p);
        }
        let sign = if (n - chosen.len()) % 2 == 0 { 1 } else { -1 };
        total += sign * normalized_volume(&sum);
    }
    // Over Euclidean volumes the alternating sum is already the normalized
    // mixed volume; normalized volumes carry an extra factor n!.
    total / (1..=n as i128).product::<i128>()
}
