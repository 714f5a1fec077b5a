use super::Halfspace;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub(crate) fn cross(u: &[f64], v: &[f64]) -> Vec<f64> {
    vec![u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
}

pub(crate) fn same_plane(g: &Halfspace, h: &Halfspace, tol: f64) -> bool {
    (g.offset - h.offset).abs() <= tol && g.normal.iter().zip(&h.normal).all(|(a, b)| (a - b).abs() <= 1e-9)
}

/// Solve `A x = b` by Gaussian elimination with partial pivoting.
pub(crate) fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-13 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// Counter-clockwise hull (Andrew's monotone chain), collinear points dropped.
pub(crate) fn convex_hull_2d(points: &[Vec<f64>]) -> Vec<[f64; 2]> {
    let mut pts: Vec<[f64; 2]> = points.iter().map(|p| [p[0], p[1]]).collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let scale = 1.0 + pts.iter().fold(0.0f64, |m, p| m.max(p[0].abs()).max(p[1].abs()));
    let eps = 1e-12 * scale * scale;
    let turn = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= eps {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Shoelace area of a simple polygon (absolute value).
pub fn polygon_area(poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        s += p[0] * q[1] - q[0] * p[1];
    }
    0.5 * s.abs()
}

/// Sutherland–Hodgman clip of a convex polygon against `⟨a, x⟩ ≤ b`.
pub fn clip_polygon(poly: &[[f64; 2]], a: [f64; 2], b: f64) -> Vec<[f64; 2]> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let fp = a[0] * p[0] + a[1] * p[1] - b;
        let fq = a[0] * q[0] + a[1] * q[1] - b;
        if fp <= 0.0 {
            out.push(p);
        }
        if (fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0) {
            let t = fp / (fp - fq);
            out.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
        }
    }
    out
}

/// Vertices of a bounded polyhedron; counter-clockwise in the plane.
pub(crate) fn enumerate_vertices(hs: &[Halfspace], n: usize) -> Vec<Vec<f64>> {
    let scale = 1.0 + hs.iter().fold(0.0f64, |m, h| m.max(h.offset.abs()));
    let feasible = |x: &[f64]| hs.iter().all(|h| dot(&h.normal, x) - h.offset <= 1e-9 * scale);
    let mut verts: Vec<Vec<f64>> = Vec::new();
    let push = |x: Vec<f64>, verts: &mut Vec<Vec<f64>>| {
        if feasible(&x) && !verts.iter().any(|v| dist(v, &x) <= 1e-9 * scale) {
            verts.push(x);
        }
    };
    match n {
        1 => {
            for h in hs {
                push(vec![h.offset / h.normal[0]], &mut verts);
            }
            verts.sort_by(|a, b| a[0].total_cmp(&b[0]));
        }
        2 => {
            for i in 0..hs.len() {
                for j in i + 1..hs.len() {
                    let a = vec![hs[i].normal.clone(), hs[j].normal.clone()];
                    if let Some(x) = solve(a, vec![hs[i].offset, hs[j].offset]) {
                        push(x, &mut verts);
                    }
                }
            }
            let c = [
                verts.iter().map(|v| v[0]).sum::<f64>() / verts.len() as f64,
                verts.iter().map(|v| v[1]).sum::<f64>() / verts.len() as f64,
            ];
            verts.sort_by(|a, b| (a[1] - c[1]).atan2(a[0] - c[0]).total_cmp(&(b[1] - c[1]).atan2(b[0] - c[0])));
        }
        _ => {
            for i in 0..hs.len() {
                for j in i + 1..hs.len() {
                    for k in j + 1..hs.len() {
                        let a = vec![hs[i].normal.clone(), hs[j].normal.clone(), hs[k].normal.clone()];
                        if let Some(x) = solve(a, vec![hs[i].offset, hs[j].offset, hs[k].offset]) {
                            push(x, &mut verts);
                        }
                    }
                }
            }
        }
    }
    verts
}

/// Area and centroid of the convex polygon spanned by coplanar points in R^3.
pub(crate) fn planar_polygon_area(points: &[&Vec<f64>], normal: &[f64]) -> (f64, Vec<f64>) {
    let k = points.len() as f64;
    let c: Vec<f64> = (0..3).map(|i| points.iter().map(|p| p[i]).sum::<f64>() / k).collect();
    if points.len() < 3 {
        return (0.0, c);
    }
    let helper = if normal[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let mut u = cross(normal, &helper);
    let un = norm(&u);
    u.iter_mut().for_each(|x| *x /= un);
    let w = cross(normal, &u);
    let mut planar: Vec<[f64; 2]> = points
        .iter()
        .map(|p| {
            let d: Vec<f64> = (0..3).map(|i| p[i] - c[i]).collect();
            [dot(&d, &u), dot(&d, &w)]
        })
        .collect();
    planar.sort_by(|a, b| a[1].atan2(a[0]).total_cmp(&b[1].atan2(b[0])));
    (polygon_area(&planar), c)
}

/// Circumcenter of `pts` within their affine hull.
fn circumcenter(pts: &[&Vec<f64>]) -> Option<Vec<f64>> {
    let p0 = pts[0];
    let k = pts.len() - 1;
    if k == 0 {
        return Some(p0.clone());
    }
    let d: Vec<Vec<f64>> = pts[1..].iter().map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
    let gram: Vec<Vec<f64>> = (0..k).map(|i| (0..k).map(|j| 2.0 * dot(&d[i], &d[j])).collect()).collect();
    let rhs: Vec<f64> = d.iter().map(|v| dot(v, v)).collect();
    let lam = solve(gram, rhs)?;
    let mut c = p0.clone();
    for (l, v) in lam.iter().zip(&d) {
        c.iter_mut().zip(v).for_each(|(x, y)| *x += l * y);
    }
    Some(c)
}

/// Radius of the smallest ball containing `pts`, by checking the circumballs
/// of all subsets of at most `n + 1` points.
pub(crate) fn minimal_enclosing_radius(pts: &[Vec<f64>]) -> f64 {
    let n = pts[0].len();
    let m = pts.len();
    if m == 1 {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    let mut idx: Vec<usize> = Vec::new();
    fn rec(
        start: usize,
        idx: &mut Vec<usize>,
        limit: usize,
        pts: &[Vec<f64>],
        best: &mut f64,
    ) {
        if !idx.is_empty() {
            let sub: Vec<&Vec<f64>> = idx.iter().map(|&i| &pts[i]).collect();
            if let Some(c) = circumcenter(&sub) {
                let r = dist(&c, sub[0]);
                if r < *best && pts.iter().all(|p| dist(p, &c) <= r * (1.0 + 1e-12) + 1e-15) {
                    *best = r;
                }
            }
        }
        if idx.len() == limit {
            return;
        }
        for i in start..pts.len() {
            idx.push(i);
            rec(i + 1, idx, limit, pts, best);
            idx.pop();
        }
    }
    rec(0, &mut idx, (n + 1).min(m), pts, &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enclosing_radius_of_triangle() {
        // Obtuse triangle: the longest side is a diameter.
        let pts = vec![vec![0.0, 0.0], vec![4.0, 0.0], vec![2.0, 0.5]];
        assert!((minimal_enclosing_radius(&pts) - 2.0).abs() < 1e-12);
        // Equilateral triangle with side 1: circumradius 1/√3.
        let pts = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, 3f64.sqrt() / 2.0]];
        assert!((minimal_enclosing_radius(&pts) - 1.0 / 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn clip_square() {
        let sq = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let half = clip_polygon(&sq, [1.0, 0.0], 0.5);
        assert!((polygon_area(&half) - 0.5).abs() < 1e-15);
        assert!(clip_polygon(&sq, [1.0, 0.0], -0.5).is_empty());
    }
}
