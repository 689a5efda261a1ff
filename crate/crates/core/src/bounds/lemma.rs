//! Maximizing `f(x) = |x - a|^2` over the sphere `|x| = r`.

use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const MAX_DIMENSION: usize = 8;
const REFINE_ITERATIONS: usize = 100;

pub fn lemma_objective<T: Scalar>(x: &[T], a: &[T]) -> T {
    x.iter().zip(a).fold(T::zero(), |acc, (&xi, &ai)| acc + (xi - ai) * (xi - ai))
}

fn norm<T: Scalar>(v: &[T]) -> T {
    Float::sqrt(v.iter().fold(T::zero(), |acc, &x| acc + x * x))
}

/// `(r + |a|)^2`, the value of the objective at the maximizer.
pub fn lemma_maximum<T: Scalar>(a: &[T], r: T) -> T {
    let s = r + norm(a);
    s * s
}

/// The point of the radius-`r` sphere farthest from `a`: `-(r/|a|) a`.
pub fn lemma_argmax<T: Scalar>(a: &[T], r: T) -> Result<Vec<T>> {
    if r < T::zero() {
        return Err(Error::invalid("lemma", "radius must be non-negative"));
    }
    let len = norm(a);
    if len == T::zero() {
        return Err(Error::ZeroVector);
    }
    let d = r / len;
    Ok(a.iter().map(|&ai| -d * ai).collect())
}

/// Sampling oracle for [`lemma_argmax`]: best of `samples` uniform points on
/// the sphere, then coordinate-wise projected ascent.
///
/// Deterministic in `seed`. In one dimension both sphere points are checked.
pub fn lemma_brute_force<T: Scalar>(a: &[T], r: T, samples: usize, seed: u64) -> Result<(Vec<T>, T)> {
    let n = a.len();
    if n == 0 || n > MAX_DIMENSION {
        return Err(Error::invalid("lemma", format!("dimension must be in 1..={MAX_DIMENSION}, got {n}")));
    }
    if samples == 0 {
        return Err(Error::invalid("lemma", "need at least one sample"));
    }
    if r < T::zero() {
        return Err(Error::invalid("lemma", "radius must be non-negative"));
    }
    if r == T::zero() {
        let x = vec![T::zero(); n];
        let f = lemma_objective(&x, a);
        return Ok((x, f));
    }
    if n == 1 {
        let (lo, hi) = (vec![-r], vec![r]);
        let (flo, fhi) = (lemma_objective(&lo, a), lemma_objective(&hi, a));
        return Ok(if flo >= fhi { (lo, flo) } else { (hi, fhi) });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(Vec<T>, T)> = None;
    let mut x = vec![T::zero(); n];
    for _ in 0..samples {
        for xi in x.iter_mut() {
            let g: f64 = StandardNormal.sample(&mut rng);
            *xi = T::lit(g);
        }
        if !project(&mut x, r) {
            continue;
        }
        let f = lemma_objective(&x, a);
        if best.as_ref().map_or(true, |(_, bf)| f > *bf) {
            best = Some((x.clone(), f));
        }
    }
    let (mut x, mut f) = best.unwrap_or_else(|| {
        let mut e = vec![T::zero(); n];
        e[0] = r;
        let f = lemma_objective(&e, a);
        (e, f)
    });

    let mut step = T::lit(1e-2) * r;
    let mut candidate = x.clone();
    for _ in 0..REFINE_ITERATIONS {
        let mut improved = false;
        for i in 0..n {
            for sign in [T::one(), -T::one()] {
                candidate.copy_from_slice(&x);
                candidate[i] += sign * step;
                if !project(&mut candidate, r) {
                    continue;
                }
                let fc = lemma_objective(&candidate, a);
                if fc > f {
                    x.copy_from_slice(&candidate);
                    f = fc;
                    improved = true;
                }
            }
        }
        if !improved {
            step = step * T::lit(0.5);
        }
    }
    Ok((x, f))
}

fn project<T: Scalar>(x: &mut [T], r: T) -> bool {
    let len = norm(x);
    if len == T::zero() || !Float::is_finite(len) {
        return false;
    }
    let scale = r / len;
    for xi in x.iter_mut() {
        *xi = *xi * scale;
    }
    true
}
