//! Floating-point orientation and containment for Monte Carlo trials.

/// Orientation determinant of `d + 1` points in `R^d`.
pub(crate) fn orient_f64(pts: &[&[f64]]) -> f64 {
    let d = pts.len() - 1;
    let o = pts[0];
    match d {
        1 => pts[1][0] - o[0],
        2 => (pts[1][0] - o[0]) * (pts[2][1] - o[1]) - (pts[1][1] - o[1]) * (pts[2][0] - o[0]),
        _ => {
            let mut m: Vec<Vec<f64>> =
                pts[1..].iter().map(|p| p.iter().zip(o).map(|(x, y)| x - y).collect()).collect();
            let mut det = 1.0;
            for k in 0..d {
                let piv = (k..d)
                    .max_by(|&a, &b| m[a][k].abs().total_cmp(&m[b][k].abs()))
                    .expect("nonempty range");
                if m[piv][k] == 0.0 {
                    return 0.0;
                }
                if piv != k {
                    m.swap(piv, k);
                    det = -det;
                }
                det *= m[k][k];
                for i in k + 1..d {
                    let f = m[i][k] / m[k][k];
                    for j in k..d {
                        m[i][j] -= f * m[k][j];
                    }
                }
            }
            det
        }
    }
}

/// Closed-hull membership evaluated in `f64`. Degenerate simplices contain nothing.
pub fn contains_f64(simplex: &[&[f64]], q: &[f64]) -> bool {
    let base = orient_f64(simplex);
    if base == 0.0 || !base.is_finite() {
        return false;
    }
    let mut verts = simplex.to_vec();
    for i in 0..simplex.len() {
        verts[i] = q;
        let s = orient_f64(&verts);
        verts[i] = simplex[i];
        if s * base < 0.0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_and_spatial_membership() {
        let tri: [&[f64]; 3] = [&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]];
        assert!(contains_f64(&tri, &[0.2, 0.2]));
        assert!(contains_f64(&tri, &[0.0, 0.0]));
        assert!(!contains_f64(&tri, &[0.6, 0.6]));
        let tet: [&[f64]; 4] = [&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]];
        assert!(contains_f64(&tet, &[0.1, 0.2, 0.3]));
        assert!(!contains_f64(&tet, &[0.5, 0.5, 0.5]));
        let seg: [&[f64]; 2] = [&[2.0], &[-1.0]];
        assert!(contains_f64(&seg, &[0.0]));
        assert!(!contains_f64(&seg, &[3.0]));
        let flat: [&[f64]; 3] = [&[0.0, 0.0], &[1.0, 1.0], &[2.0, 2.0]];
        assert!(!contains_f64(&flat, &[1.0, 1.0]));
    }

    #[test]
    fn lu_determinant_matches_cofactors() {
        let pts: [&[f64]; 5] = [&[0.0; 4], &[2.0, 0.0, 0.0, 0.0], &[0.0, 3.0, 0.0, 0.0], &[0.0, 0.0, 0.0, 1.0], &[0.0, 0.0, 5.0, 0.0]];
        // one transposition of a diagonal matrix with product 30
        assert!((orient_f64(&pts) + 30.0).abs() < 1e-9);
    }
}
