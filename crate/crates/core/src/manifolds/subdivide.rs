use super::complex::SimplicialComplex;
use super::metric::PolyhedralMetric;
use crate::error::Result;

/// Barycentric subdivision with the induced flat metric.
///
/// New vertices are the barycenters of the old faces, numbered by face
/// dimension and then in [`SimplicialComplex::faces`] order; new top simplices
/// are the complete flags `F_0 < F_1 < .. < F_n`.
pub fn barycentric_subdivide(c: &PolyhedralMetric) -> Result<PolyhedralMetric> {
    let complex = c.complex();
    let n = complex.dim();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for k in 0..=n {
        offsets.push(faces.len());
        faces.extend(complex.faces(k).iter().cloned());
    }
    let id = |f: &[usize]| offsets[f.len() - 1] + complex.face_index(f).expect("face of complex");

    let mut tops = Vec::new();
    for t in complex.top_simplices() {
        flags(t, &mut vec![id(t)], &id, &mut tops);
    }
    let sub = SimplicialComplex::new(n, tops)?;
    let lengths = sub
        .edges()
        .iter()
        .map(|e| barycenter_distance(c, &faces[e[0]], &faces[e[1]]))
        .collect();
    PolyhedralMetric::with_tolerances(sub, lengths, *c.tolerances())
}

fn flags(face: &[usize], chain: &mut Vec<usize>, id: &dyn Fn(&[usize]) -> usize, out: &mut Vec<Vec<usize>>) {
    if face.len() == 1 {
        out.push(chain.clone());
        return;
    }
    for skip in 0..face.len() {
        let sub: Vec<usize> = face.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
        chain.push(id(&sub));
        flags(&sub, chain, id, out);
        chain.pop();
    }
}

/// Distance between the barycenters of two nested faces, from
/// `|sum w_i p_i|^2 = -1/2 sum_ij w_i w_j l_ij^2` for weights summing to 0.
fn barycenter_distance(c: &PolyhedralMetric, a: &[usize], b: &[usize]) -> f64 {
    let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let weights: Vec<f64> = big
        .iter()
        .map(|v| {
            let inner = if small.contains(v) { 1.0 / small.len() as f64 } else { 0.0 };
            inner - 1.0 / big.len() as f64
        })
        .collect();
    let mut sq = 0.0;
    for i in 0..big.len() {
        for j in i + 1..big.len() {
            let l = c.length(big[i], big[j]).expect("edge of face");
            sq -= weights[i] * weights[j] * l * l;
        }
    }
    sq.max(0.0).sqrt()
}
