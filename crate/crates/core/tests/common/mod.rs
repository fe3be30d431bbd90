#![allow(dead_code)]

use std::path::PathBuf;

use dsf_minreal::cli::parse_model;
use dsf_minreal::dsf::Dsf;
use dsf_minreal::ratcore::{Polynomial, RationalFunction, RationalMatrix};
use dsf_minreal::sslib::PartitionedRealization;
use dsf_minreal::Tolerances;
use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name)
}

pub fn load_dsf(name: &str) -> Dsf {
    let tol = Tolerances::default();
    parse_model(&data_path(name), &tol)
        .unwrap()
        .model
        .to_dsf(&tol)
        .unwrap()
}

/// `num / den` from roots, with a gain.
pub fn rf(gain: f64, zeros: &[f64], poles: &[f64]) -> RationalFunction {
    RationalFunction::new(
        Polynomial::from_roots(zeros).scale(gain),
        Polynomial::from_roots(poles),
    )
    .unwrap()
}

/// Three-node structure function with poles -1..-4 used throughout the
/// documentation, built directly rather than from the data file.
pub fn example2() -> Dsf {
    let z = RationalFunction::zero();
    let q = RationalMatrix::new(
        3,
        3,
        vec![
            z.clone(),
            rf(1.0, &[], &[-2.0]),
            rf(1.0, &[], &[-3.0]),
            rf(1.0, &[], &[-1.0]),
            z.clone(),
            rf(1.0, &[], &[-3.0]),
            rf(1.0, &[], &[-1.0]),
            rf(1.0, &[], &[-2.0]),
            z,
        ],
    )
    .unwrap();
    let p = RationalMatrix::from_fn(3, 1, |_, _| rf(1.0, &[], &[-4.0]));
    Dsf::new(q, p).unwrap()
}

/// Five-state network: `a_kk = -k`, listed couplings `1`, `b11 = b22 = 1`.
pub fn example1_realization() -> PartitionedRealization {
    let a = DMatrix::from_row_slice(
        5,
        5,
        &[
            -1.0, 0.0, 1.0, 0.0, 0.0, //
            0.0, -2.0, 0.0, 1.0, 0.0, //
            0.0, 1.0, -3.0, 0.0, 1.0, //
            1.0, 0.0, 0.0, -4.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, -5.0,
        ],
    );
    let mut b = DMatrix::zeros(5, 2);
    b[(0, 0)] = 1.0;
    b[(1, 1)] = 1.0;
    PartitionedRealization::from_blocks(&a, &b, 3).unwrap()
}

/// `count` distinct values in `[lo, hi]` at least `gap` apart, descending.
pub fn spaced_values(rng: &mut ChaCha8Rng, count: usize, lo: f64, hi: f64, gap: f64) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..count).map(|_| rng.gen_range(lo..=hi)).collect();
        v.sort_by(|a, b| b.total_cmp(a));
        if v.windows(2).all(|w| w[0] - w[1] >= gap) {
            return v;
        }
    }
}

fn well_conditioned(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    loop {
        let t = DMatrix::identity(n, n) + DMatrix::from_fn(n, n, |_, _| rng.gen_range(-0.6..0.6));
        let sv = t.clone().singular_values();
        if sv.min() > 0.0 && sv.max() / sv.min() < 20.0 {
            return t;
        }
    }
}

/// `A = T diag(eigs) T^-1` with distinct real eigenvalues in `[-10, -1]`.
pub fn random_partitioned(
    rng: &mut ChaCha8Rng,
    p: usize,
    h: usize,
    m: usize,
) -> PartitionedRealization {
    let n = p + h;
    let eigs = spaced_values(rng, n, -10.0, -1.0, 0.1);
    let t = well_conditioned(rng, n);
    let t_inv = t.clone().try_inverse().unwrap();
    let a = &t * DMatrix::from_diagonal(&DVector::from_vec(eigs)) * t_inv;
    let b = DMatrix::from_fn(n, m, |_, _| rng.gen_range(-1.0..1.0));
    PartitionedRealization::from_blocks(&a, &b, p).unwrap()
}

/// Pole-residue description of a random structure function whose residues
/// are rank one with a zero `Q` diagonal.
pub struct RandomDsf {
    pub poles: Vec<f64>,
    pub kq: Vec<DMatrix<f64>>,
    pub kp: Vec<DMatrix<f64>>,
    pub dsf: Dsf,
}

pub fn random_dsf(rng: &mut ChaCha8Rng, p: usize, m: usize, l: usize) -> RandomDsf {
    let poles = spaced_values(rng, l, -10.0, -1.0, 0.5);
    let mut kq = Vec::new();
    let mut kp = Vec::new();
    for _ in 0..l {
        let mut e = DVector::<f64>::zeros(p);
        let mut rows: Vec<usize> = (0..p).collect();
        rows.shuffle(rng);
        let support = rng.gen_range(1..=p.min(2));
        for &j in rows.iter().take(support) {
            e[j] = rng.gen_range(0.5..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        }
        let mut f = DVector::<f64>::zeros(p + m);
        while f.amax() == 0.0 {
            for k in 0..p + m {
                let on_support = k < p && e[k] != 0.0;
                if !on_support && rng.gen_bool(0.6) {
                    f[k] = rng.gen_range(-2.0..2.0);
                }
            }
        }
        let k = &e * f.transpose();
        kq.push(k.columns(0, p).into_owned());
        kp.push(k.columns(p, m).into_owned());
    }
    let dsf = Dsf::from_pole_residue(&poles, &kq, &kp, 1e-8).unwrap();
    RandomDsf { poles, kq, kp, dsf }
}

/// Random undirected graph as an edge list.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// All maximum cliques by exhaustive subset enumeration, each sorted, in
/// lexicographic order.
pub fn brute_force_cliques(n: usize, edges: &[(usize, usize)]) -> (usize, Vec<Vec<usize>>) {
    let mut adj = vec![0u32; n];
    for &(i, j) in edges {
        adj[i] |= 1 << j;
        adj[j] |= 1 << i;
    }
    let mut best = 0;
    let mut found: Vec<u32> = vec![0];
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size < best {
            continue;
        }
        let complete = (0..n)
            .filter(|&i| mask & (1 << i) != 0)
            .all(|i| (mask & !(1 << i)) & !adj[i] == 0);
        if !complete {
            continue;
        }
        if size > best {
            best = size;
            found.clear();
        }
        found.push(mask);
    }
    let mut cliques: Vec<Vec<usize>> = found
        .into_iter()
        .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
        .collect();
    cliques.sort();
    (best, cliques)
}
