use std::collections::{HashMap, VecDeque};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::roots::{reflect_coeffs, RootSystemData};
use crate::error::{Error, Result};

/// A Weyl group element. Simple reflections are indexed from 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeylElement {
    /// One reduced word.
    pub word: Vec<usize>,
    /// `w(alpha_j)` in simple-root coordinates, one entry per `j`. This is
    /// the exact identity of the element.
    pub images: Vec<Vec<i64>>,
    /// Matrix of `w` on the ambient coordinate space.
    pub matrix: Vec<Vec<f64>>,
}

impl WeylElement {
    pub fn identity(rs: &RootSystemData) -> Self {
        Self {
            word: Vec::new(),
            images: (0..rs.rank)
                .map(|i| (0..rs.rank).map(|j| i64::from(i == j)).collect())
                .collect(),
            matrix: (0..rs.dim)
                .map(|i| (0..rs.dim).map(|j| f64::from(u8::from(i == j))).collect())
                .collect(),
        }
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// `w s_i`.
    pub fn times_simple(&self, rs: &RootSystemData, i: usize) -> Self {
        let images = (0..rs.rank)
            .map(|j| {
                let a = rs.cartan_pairings[j][i];
                self.images[j]
                    .iter()
                    .zip(&self.images[i])
                    .map(|(x, y)| x - a * y)
                    .collect()
            })
            .collect();
        let s = rs.reflection_matrix(i);
        let matrix = mat_mul(&self.matrix, &s);
        let mut word = self.word.clone();
        word.push(i);
        Self { word, images, matrix }
    }

    /// `w(beta)` for `beta` in simple-root coordinates.
    pub fn apply_coeffs(&self, beta: &[i64]) -> Vec<i64> {
        let rank = self.images.len();
        (0..rank)
            .map(|k| beta.iter().zip(&self.images).map(|(c, img)| c * img[k]).sum())
            .collect()
    }

    /// `w(lambda)` for `lambda` in ambient coordinates.
    pub fn apply(&self, lambda: &[Complex64]) -> Vec<Complex64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(lambda).map(|(m, x)| x * *m).sum())
            .collect()
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversions(&self, rs: &RootSystemData) -> usize {
        rs.positive_coeffs
            .iter()
            .filter(|c| self.apply_coeffs(c).iter().any(|&x| x < 0))
            .count()
    }

    /// Whether `w(alpha_i)` is negative, i.e. `l(w s_i) < l(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.images[i].iter().any(|&x| x < 0)
    }

    /// The inverse element, found in the group list by its images.
    pub fn inverse_in<'a>(&self, group: &'a [WeylElement]) -> Option<&'a WeylElement> {
        let rank = self.images.len();
        group.iter().find(|g| {
            (0..rank).all(|j| {
                let back = self.apply_coeffs(&g.images[j]);
                back.iter().enumerate().all(|(k, &x)| x == i64::from(k == j))
            })
        })
    }
}

fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// The whole group, by breadth-first search over right multiplication by
/// simple reflections. The stored word of each element is therefore of
/// minimal length.
pub fn generate_weyl(rs: &RootSystemData) -> Vec<WeylElement> {
    let id = WeylElement::identity(rs);
    let mut seen: HashMap<Vec<Vec<i64>>, usize> = HashMap::from([(id.images.clone(), 0)]);
    let mut out = vec![id];
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for i in 0..rs.rank {
            let next = out[k].times_simple(rs, i);
            if !seen.contains_key(&next.images) {
                seen.insert(next.images.clone(), out.len());
                queue.push_back(out.len());
                out.push(next);
            }
        }
    }
    out
}

/// Element represented by an arbitrary word.
pub fn element_of_word(rs: &RootSystemData, word: &[usize]) -> WeylElement {
    let mut w = WeylElement::identity(rs);
    for &i in word {
        w = w.times_simple(rs, i);
    }
    w.word = word.to_vec();
    w
}

/// The product `a b`, looked up in `group` so that the stored word is reduced.
pub fn multiply(rs: &RootSystemData, group: &[WeylElement], a: &WeylElement, b: &WeylElement) -> WeylElement {
    let mut word = a.word.clone();
    word.extend(&b.word);
    let prod = element_of_word(rs, &word);
    group
        .iter()
        .find(|g| g.images == prod.images)
        .cloned()
        .unwrap_or(prod)
}

/// All reduced words of `w`.
///
/// A reduced word ending in `i` exists iff `w(alpha_i) < 0`, so the search
/// peels right descents and never leaves the set of reduced prefixes.
pub fn reduced_words(w: &WeylElement, rs: &RootSystemData) -> Vec<Vec<usize>> {
    fn go(w: &WeylElement, rs: &RootSystemData, suffix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let descents: Vec<usize> = (0..rs.rank).filter(|&i| w.has_right_descent(i)).collect();
        if descents.is_empty() {
            out.push(suffix.iter().rev().copied().collect());
            return;
        }
        for i in descents {
            let shorter = w.times_simple(rs, i);
            suffix.push(i);
            go(&shorter, rs, suffix, out);
            suffix.pop();
        }
    }
    let mut out = Vec::new();
    go(w, rs, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// For a reduced word `s_{i_1} ... s_{i_n}` the roots
/// `w_j^{-1} alpha_{i_j}` with `w_j = s_{i_{j+1}} ... s_{i_n}`, in
/// simple-root coordinates.
pub fn factorization_roots(word: &[usize], rs: &RootSystemData) -> Result<Vec<Vec<i64>>> {
    if let Some(&bad) = word.iter().find(|&&i| i >= rs.rank) {
        return Err(Error::InvalidParameter(format!("no simple reflection with index {bad}")));
    }
    let w = element_of_word(rs, word);
    if w.inversions(rs) != word.len() {
        return Err(Error::NonReducedWord(word.to_vec()));
    }
    let n = word.len();
    Ok((0..n)
        .map(|j| {
            let mut beta: Vec<i64> = (0..rs.rank).map(|k| i64::from(k == word[j])).collect();
            // w_j^{-1} = s_{i_n} ... s_{i_{j+1}}: apply s_{i_{j+1}} first
            for &i in &word[j + 1..] {
                beta = reflect_coeffs(&rs.cartan_pairings, i, &beta);
            }
            beta
        })
        .collect())
}

/// Distinct points `w lambda0` (tolerance `1e-9`) and `|W_lambda0|`.
pub fn orbit_and_stabilizer(lambda0: &[Complex64], group: &[WeylElement]) -> (Vec<Vec<Complex64>>, usize) {
    let mut orbit: Vec<Vec<Complex64>> = Vec::new();
    for w in group {
        let p = w.apply(lambda0);
        if !orbit.iter().any(|q| dist(q, &p) < 1e-9) {
            orbit.push(p);
        }
    }
    let stab = group.len() / orbit.len();
    (orbit, stab)
}

pub(crate) fn dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::super::roots::{build_root_system, RootKind};
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn group_orders() {
        for (kind, order) in [
            (RootKind::A1Power(1), 2),
            (RootKind::A1Power(3), 8),
            (RootKind::A2, 6),
            (RootKind::B2, 8),
            (RootKind::G2, 12),
        ] {
            let rs = build_root_system(kind).unwrap();
            assert_eq!(generate_weyl(&rs).len(), order, "{kind}");
        }
    }

    #[test]
    fn reduced_word_examples() {
        let b2 = build_root_system(RootKind::B2).unwrap();
        let w = generate_weyl(&b2);
        assert_eq!(reduced_words(&w[0], &b2), vec![Vec::<usize>::new()]);
        let longest = w.iter().max_by_key(|e| e.length()).unwrap();
        assert_eq!(reduced_words(longest, &b2), vec![vec![0, 1, 0, 1], vec![1, 0, 1, 0]]);
        let s1 = element_of_word(&b2, &[0]);
        assert_eq!(reduced_words(&s1, &b2), vec![vec![0]]);
    }

    #[test]
    fn factorization_examples() {
        let a2 = build_root_system(RootKind::A2).unwrap();
        assert_eq!(factorization_roots(&[0], &a2).unwrap(), vec![vec![1, 0]]);
        // s_2 alpha_1 = alpha_1 + alpha_2
        assert_eq!(factorization_roots(&[0, 1], &a2).unwrap(), vec![vec![1, 1], vec![0, 1]]);
        assert!(matches!(factorization_roots(&[0, 0], &a2), Err(Error::NonReducedWord(_))));
        let b2 = build_root_system(RootKind::B2).unwrap();
        let mut roots = factorization_roots(&[0, 1, 0, 1], &b2).unwrap();
        roots.sort();
        let mut all = b2.positive_coeffs.clone();
        all.sort();
        assert_eq!(roots, all);
    }

    #[test]
    fn orbit_examples() {
        let a1 = build_root_system(RootKind::A1Power(1)).unwrap();
        let w = generate_weyl(&a1);
        let (orbit, stab) = orbit_and_stabilizer(&[c(0.0, -2.0)], &w);
        assert_eq!((orbit.len(), stab), (2, 1));
        assert!(dist(&orbit[1], &[c(0.0, 2.0)]) < 1e-15);
        let (orbit, stab) = orbit_and_stabilizer(&[c(0.0, 0.0)], &w);
        assert_eq!((orbit.len(), stab), (1, 2));
        let a12 = build_root_system(RootKind::A1Power(2)).unwrap();
        let w = generate_weyl(&a12);
        let (orbit, stab) = orbit_and_stabilizer(&[c(0.0, -1.0), c(0.0, 0.0)], &w);
        assert_eq!((orbit.len(), stab), (2, 2));
    }

    #[test]
    fn matrices_are_orthogonal_and_match_images() {
        let g2 = build_root_system(RootKind::G2).unwrap();
        for w in generate_weyl(&g2) {
            for (j, img) in w.images.iter().enumerate() {
                let amb = g2.to_ambient(img);
                let lam: Vec<Complex64> = g2.simple_roots[j].iter().map(|&x| c(x as f64, 0.0)).collect();
                let got = w.apply(&lam);
                for (a, b) in amb.iter().zip(&got) {
                    assert!((*a as f64 - b.re).abs() < 1e-12);
                }
            }
            assert_eq!(w.inversions(&g2), w.length());
        }
    }
}
