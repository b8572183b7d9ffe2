//! Exact sampler: independent moduli by inverse CDF, uniform angles.
//!
//! Stream layout: sample i uses `ChaCha8Rng::seed_from_u64(seed)` on stream
//! i, drawing (modulus, angle) for j = 0, 1, …, n−1 in order. Results do not
//! depend on the thread count.

use std::f64::consts::{LN_2, PI};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::StatisticsError;
use crate::kernel::WeightTable;
use crate::par;
use crate::potential::{PerturbedPotential, RadialPotential};
use crate::quad::gauss_legendre;

const NODES: usize = 4096;
const CELL_ORDER: usize = 8;

/// Per-index inverse-CDF tables for r ↦ ∝ r^{2j+1}e^{−nq(r)}.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplerTables {
    pub n: usize,
    /// For each j: increasing radii and the CDF at those radii.
    pub nodes: Vec<Vec<f64>>,
    pub cdf: Vec<Vec<f64>>,
}

impl SamplerTables {
    /// Build (or load from the disk cache) the tables for (p, n).
    pub fn build(p: &RadialPotential, n: usize) -> Result<Self, StatisticsError> {
        #[cfg(all(feature = "cache", not(target_arch = "wasm32")))]
        {
            let key = cache::key(p, n);
            if let Some(t) = cache::load(&key, n) {
                return Ok(t);
            }
            let t = Self::compute(p, n)?;
            cache::store(&key, &t);
            Ok(t)
        }
        #[cfg(not(all(feature = "cache", not(target_arch = "wasm32"))))]
        Self::compute(p, n)
    }

    /// Build without touching the cache.
    pub fn compute(p: &RadialPotential, n: usize) -> Result<Self, StatisticsError> {
        if n == 0 {
            return Err(StatisticsError::Invalid("n must be ≥ 1".into()));
        }
        let pp = PerturbedPotential::unperturbed(p.clone(), n);
        let tab = WeightTable::build_with_window(&pp, None, 0.0)
            .map_err(|e| StatisticsError::TableBuildFailure(e.to_string()))?;
        let (gx, gw) = gauss_legendre(CELL_ORDER);
        let nf = n as f64;
        let per_j = par::map_range(n, |j| {
            let log_i = tab.log_norms[j];
            let dens = |r: f64| ((2 * j + 1) as f64 * r.ln() - nf * p.q(r) + LN_2 - log_i).exp();
            let regions = &tab.index[j].regions;
            let per = (NODES / regions.len()).max(2);
            let mut nodes = Vec::with_capacity(per * regions.len());
            let mut cdf = Vec::with_capacity(per * regions.len());
            let mut acc = 0.0;
            for &(lo, hi) in regions {
                let h = (hi - lo) / (per - 1) as f64;
                for k in 0..per {
                    let a = lo + h * k as f64;
                    if k > 0 {
                        let b = a - h;
                        let mass: f64 = gx
                            .iter()
                            .zip(&gw)
                            .map(|(x, w)| {
                                let r = b + 0.5 * h * (x + 1.0);
                                if r > 0.0 { w * dens(r) } else { 0.0 }
                            })
                            .sum::<f64>()
                            * 0.5
                            * h;
                        acc += mass;
                    }
                    nodes.push(a);
                    cdf.push(acc);
                }
            }
            for c in &mut cdf {
                *c /= acc;
            }
            (nodes, cdf, acc)
        });
        let mut nodes = Vec::with_capacity(n);
        let mut cdf = Vec::with_capacity(n);
        for (j, (nd, c, total)) in per_j.into_iter().enumerate() {
            if !((total - 1.0).abs() < 1e-6) {
                return Err(StatisticsError::TableBuildFailure(format!("index {j}: table mass {total}")));
            }
            nodes.push(nd);
            cdf.push(c);
        }
        Ok(SamplerTables { n, nodes, cdf })
    }

    /// Inverse CDF of index j at u ∈ [0, 1).
    pub fn quantile(&self, j: usize, u: f64) -> f64 {
        let (r, c) = (&self.nodes[j], &self.cdf[j]);
        let k = c.partition_point(|&v| v <= u).clamp(1, c.len() - 1) - 1;
        let span = c[k + 1] - c[k];
        if span <= 0.0 {
            return r[k];
        }
        r[k] + (r[k + 1] - r[k]) * ((u - c[k]) / span).clamp(0.0, 1.0)
    }

    /// CDF of index j at radius r (piecewise linear between nodes).
    pub fn cdf_at(&self, j: usize, r: f64) -> f64 {
        let (x, c) = (&self.nodes[j], &self.cdf[j]);
        let k = x.partition_point(|&v| v <= r);
        if k == 0 {
            return 0.0;
        }
        if k == x.len() {
            return 1.0;
        }
        let w = (r - x[k - 1]) / (x[k] - x[k - 1]);
        c[k - 1] + w * (c[k] - c[k - 1])
    }
}

/// `count` independent configurations of n points.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    pub n: usize,
    pub count: usize,
    pub seed: u64,
    /// Row-major count × n.
    pub moduli: Vec<f64>,
    pub angles: Vec<f64>,
}

impl SampleBatch {
    pub fn moduli(&self, i: usize) -> &[f64] {
        &self.moduli[i * self.n..(i + 1) * self.n]
    }

    pub fn angles(&self, i: usize) -> &[f64] {
        &self.angles[i * self.n..(i + 1) * self.n]
    }
}

pub fn sample(p: &RadialPotential, n: usize, count: usize, seed: u64) -> Result<SampleBatch, StatisticsError> {
    let tables = SamplerTables::build(p, n)?;
    Ok(sample_with_tables(&tables, count, seed))
}

pub fn sample_with_tables(tables: &SamplerTables, count: usize, seed: u64) -> SampleBatch {
    let n = tables.n;
    let rows = par::map_range(count, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let mut m = Vec::with_capacity(n);
        let mut a = Vec::with_capacity(n);
        for j in 0..n {
            m.push(tables.quantile(j, rng.gen::<f64>()));
            a.push(2.0 * PI * rng.gen::<f64>());
        }
        (m, a)
    });
    let mut moduli = Vec::with_capacity(count * n);
    let mut angles = Vec::with_capacity(count * n);
    for (m, a) in rows {
        moduli.extend(m);
        angles.extend(a);
    }
    SampleBatch { n, count, seed, moduli, angles }
}

#[cfg(all(feature = "cache", not(target_arch = "wasm32")))]
mod cache {
    use std::io::Write;
    use std::path::PathBuf;

    use sha2::{Digest, Sha256};

    use super::{SamplerTables, CELL_ORDER, NODES};
    use crate::potential::RadialPotential;

    const MAGIC: &[u8] = b"coulombgap-sampler-v1\n";

    pub(super) fn key(p: &RadialPotential, n: usize) -> String {
        let mut h = Sha256::new();
        h.update(MAGIC);
        h.update(p.fingerprint());
        h.update((n as u64).to_le_bytes());
        h.update((NODES as u64).to_le_bytes());
        h.update((CELL_ORDER as u64).to_le_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn dir() -> PathBuf {
        std::env::var_os("COULOMBGAP_CACHE")
            .map(PathBuf::from)
            .unwrap_or_else(|| std::env::temp_dir().join("coulombgap-cache"))
    }

    pub(super) fn load(key: &str, n: usize) -> Option<SamplerTables> {
        let bytes = std::fs::read(dir().join(format!("{key}.bin"))).ok()?;
        let body = bytes.strip_prefix(MAGIC)?;
        let mut words = body.chunks_exact(8).map(|c| u64::from_le_bytes(c.try_into().unwrap()));
        if words.next()? as usize != n {
            return None;
        }
        let mut nodes = Vec::with_capacity(n);
        let mut cdf = Vec::with_capacity(n);
        for _ in 0..n {
            let len = words.next()? as usize;
            let mut r = Vec::with_capacity(len);
            let mut c = Vec::with_capacity(len);
            for _ in 0..len {
                r.push(f64::from_bits(words.next()?));
                c.push(f64::from_bits(words.next()?));
            }
            nodes.push(r);
            cdf.push(c);
        }
        Some(SamplerTables { n, nodes, cdf })
    }

    // Best effort: a failed write only costs a rebuild next time.
    pub(super) fn store(key: &str, t: &SamplerTables) {
        let d = dir();
        if std::fs::create_dir_all(&d).is_err() {
            return;
        }
        let mut buf = MAGIC.to_vec();
        buf.extend((t.n as u64).to_le_bytes());
        for (r, c) in t.nodes.iter().zip(&t.cdf) {
            buf.extend((r.len() as u64).to_le_bytes());
            for (a, b) in r.iter().zip(c) {
                buf.extend(a.to_bits().to_le_bytes());
                buf.extend(b.to_bits().to_le_bytes());
            }
        }
        let tmp = d.join(format!("{key}.{}.tmp", std::process::id()));
        let ok = std::fs::File::create(&tmp).and_then(|mut f| f.write_all(&buf)).is_ok();
        if ok {
            let _ = std::fs::rename(&tmp, d.join(format!("{key}.bin")));
        } else {
            let _ = std::fs::remove_file(&tmp);
        }
    }
}
