//! Straight-line reference implementations used as oracles. They share
//! nothing with the library except the random stream, and consume it in the
//! documented order.
#![allow(dead_code, clippy::needless_range_loop, clippy::too_many_arguments)]

use hide::RngStream;
use std::f64::consts::PI;

pub const LO: f64 = -100.0;
pub const HI: f64 = 100.0;

pub fn rastrigin(x: &[f64]) -> f64 {
    let mut s = 10.0 * x.len() as f64;
    for v in x {
        s += v * v - 10.0 * (2.0 * PI * v).cos();
    }
    s
}

pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

fn clamp(v: f64) -> f64 {
    v.clamp(LO, HI)
}

fn uniform_point(d: usize, t: &mut RngStream) -> Vec<f64> {
    (0..d).map(|_| LO + (HI - LO) * t.uniform()).collect()
}

fn binomial(u: &[f64], x: &[f64], cr: f64, t: &mut RngStream) -> Vec<f64> {
    if cr >= 1.0 {
        return u.to_vec();
    }
    let k = t.index(u.len());
    let mut out = vec![0.0; u.len()];
    for j in 0..u.len() {
        let r = t.uniform();
        out[j] = if r < cr || j == k { u[j] } else { x[j] };
    }
    out
}

pub struct DeTrace {
    pub positions: Vec<Vec<f64>>,
    pub fitness: Vec<f64>,
    /// Best fitness after init and after each generation.
    pub best: Vec<f64>,
}

/// DE/rand/1/bin from a uniform start on `[-100, 100]^d`. With
/// `crossover == false` the mutant is the trial (no crossover draws).
pub fn reference_de(
    seed: u64,
    d: usize,
    np: usize,
    f_w: f64,
    cr: f64,
    gens: usize,
    crossover: bool,
    f: fn(&[f64]) -> f64,
) -> DeTrace {
    let mut t = RngStream::new(seed);
    let mut x: Vec<Vec<f64>> = (0..np).map(|_| uniform_point(d, &mut t)).collect();
    let mut fx: Vec<f64> = x.iter().map(|p| f(p)).collect();
    let mut best = vec![fx.iter().copied().fold(f64::INFINITY, f64::min)];
    for _ in 0..gens {
        let mut nx = x.clone();
        let mut nf = fx.clone();
        for i in 0..np {
            let mut r1 = t.index(np);
            while r1 == i {
                r1 = t.index(np);
            }
            let mut r2 = t.index(np);
            while r2 == i || r2 == r1 {
                r2 = t.index(np);
            }
            let mut r3 = t.index(np);
            while r3 == i || r3 == r1 || r3 == r2 {
                r3 = t.index(np);
            }
            let mut v = vec![0.0; d];
            for j in 0..d {
                v[j] = clamp(x[r1][j] + f_w * (x[r2][j] - x[r3][j]));
            }
            let trial = if crossover { binomial(&v, &x[i], cr, &mut t) } else { v };
            let ft = f(&trial);
            if ft < fx[i] {
                nx[i] = trial;
                nf[i] = ft;
            }
        }
        x = nx;
        fx = nf;
        best.push(fx.iter().copied().fold(f64::INFINITY, f64::min));
    }
    DeTrace {
        positions: x,
        fitness: fx,
        best,
    }
}

pub struct HideTrace {
    pub positions: Vec<Vec<f64>>,
    pub fitness: Vec<f64>,
    pub leaders: Vec<Vec<f64>>,
    pub global: Vec<f64>,
    pub global_fitness: f64,
}

/// HIDE with binomial crossover and an init spread of 10% of the width.
pub fn reference_hide(
    seed: u64,
    d: usize,
    np: usize,
    nl: usize,
    hc: f64,
    f_w: f64,
    cr: f64,
    gens: usize,
    horizon: usize,
    f: fn(&[f64]) -> f64,
) -> HideTrace {
    let mut t = RngStream::new(seed);
    let spread = 0.1 * (HI - LO);
    let mut g = uniform_point(d, &mut t);
    let mut leaders: Vec<Vec<f64>> = Vec::new();
    for _ in 0..nl {
        leaders.push((0..d).map(|j| clamp(g[j] + spread * t.normal())).collect());
    }
    let mut x: Vec<Vec<f64>> = Vec::new();
    for m in 0..np {
        let c = m % nl;
        x.push((0..d).map(|j| clamp(leaders[c][j] + spread * t.normal())).collect());
    }
    let mut gf = f(&g);
    let mut lf: Vec<f64> = leaders.iter().map(|p| f(p)).collect();
    let mut fx: Vec<f64> = x.iter().map(|p| f(p)).collect();

    for gen in 0..gens {
        let mut assign = vec![0; np];
        for i in 0..np {
            let mut bd = f64::INFINITY;
            for c in 0..nl {
                let dist: f64 = (0..d).map(|j| (x[i][j] - leaders[c][j]).powi(2)).sum::<f64>().sqrt();
                if dist < bd {
                    bd = dist;
                    assign[i] = c;
                }
            }
        }
        let mut nx = x.clone();
        let mut nf = fx.clone();
        for i in 0..np {
            let mut r = t.index(np);
            while r == i {
                r = t.index(np);
            }
            let lead = &leaders[assign[i]];
            let mut u = vec![0.0; d];
            for j in 0..d {
                u[j] = if (gen as f64) < hc * horizon as f64 {
                    g[j] + f_w * (lead[j] - x[r][j])
                } else {
                    lead[j] + f_w * (x[i][j] - x[r][j])
                };
                u[j] = clamp(u[j]);
            }
            let trial = binomial(&u, &x[i], cr, &mut t);
            let ft = f(&trial);
            if ft < fx[i] {
                nx[i] = trial;
                nf[i] = ft;
            }
        }
        x = nx;
        fx = nf;
        for i in 0..np {
            let c = assign[i];
            if fx[i] < lf[c] {
                lf[c] = fx[i];
                leaders[c] = x[i].clone();
            }
        }
        for c in 0..nl {
            if lf[c] < gf {
                gf = lf[c];
                g = leaders[c].clone();
            }
        }
    }
    HideTrace {
        positions: x,
        fitness: fx,
        leaders,
        global: g,
        global_fitness: gf,
    }
}

pub fn max_abs_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .flat_map(|(p, q)| {
            assert_eq!(p.len(), q.len());
            p.iter().zip(q).map(|(x, y)| (x - y).abs())
        })
        .fold(0.0, f64::max)
}
