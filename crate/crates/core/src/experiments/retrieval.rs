//! Nearest-neighbour retrieval on a synthetic clustered dataset.

use super::{cell_seed, map_bits, ExperimentConfig};
use crate::embedder::{embedding_distance, DistanceMetric, EmbeddingOperator};
use crate::error::{Error, Result};
use crate::maps::PeriodicMap;
use crate::randproj::{ProjectionSpec, RandomState, Stream};
use crate::table::Table;

/// `clusters` groups of `cluster_size` points; the last point of each group
/// is the query, the rest form the database (cluster-major order).
#[derive(Clone, Debug, PartialEq)]
pub struct ClusterDataset {
    pub database: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
    pub queries: Vec<Vec<f64>>,
    pub query_labels: Vec<usize>,
    /// Smallest distance between cluster centers.
    pub d_min: f64,
    /// Largest distance from a point to its center.
    pub rho_max: f64,
}

fn l2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Gaussian centers with gaps near `spread sqrt 2`; points add Gaussian
/// noise of norm near `noise`. Refuses datasets with `D_min <= 4 rho_max`.
pub fn make_clusters(
    n: usize,
    clusters: usize,
    size: usize,
    spread: f64,
    noise: f64,
    seed: u64,
) -> Result<ClusterDataset> {
    let rs = RandomState::new(seed, Stream::Label(3));
    let (cr, pr) = (rs.derive(0), rs.derive(1));
    let sq = (n as f64).sqrt();
    let centers: Vec<Vec<f64>> = (0..clusters)
        .map(|l| (0..n).map(|j| spread * cr.gaussian((l * n + j) as u64) / sq).collect())
        .collect();
    let mut ds = ClusterDataset {
        database: Vec::new(),
        labels: Vec::new(),
        queries: Vec::new(),
        query_labels: Vec::new(),
        d_min: f64::INFINITY,
        rho_max: 0.0,
    };
    for (l, c) in centers.iter().enumerate() {
        for p in 0..size {
            let off = ((l * size + p) * n) as u64;
            let x: Vec<f64> = c
                .iter()
                .enumerate()
                .map(|(j, v)| v + noise * pr.gaussian(off + j as u64) / sq)
                .collect();
            ds.rho_max = ds.rho_max.max(l2(&x, c));
            if p + 1 == size {
                ds.queries.push(x);
                ds.query_labels.push(l);
            } else {
                ds.database.push(x);
                ds.labels.push(l);
            }
        }
    }
    for i in 0..clusters {
        for j in i + 1..clusters {
            ds.d_min = ds.d_min.min(l2(&centers[i], &centers[j]));
        }
    }
    if !(ds.d_min > 4.0 * ds.rho_max) {
        return Err(Error::DegenerateDataset(format!(
            "minimum center gap {} is not above 4 x maximum radius {}",
            ds.d_min, ds.rho_max
        )));
    }
    Ok(ds)
}

/// Majority label among `ranked` (nearest first); ties go to the label whose
/// best rank is nearest.
pub fn vote(ranked: &[usize]) -> Option<usize> {
    let mut tally: Vec<(usize, usize, usize)> = Vec::new();
    for (rank, &l) in ranked.iter().enumerate() {
        match tally.iter_mut().find(|t| t.0 == l) {
            Some(t) => t.1 += 1,
            None => tally.push((l, 1, rank)),
        }
    }
    tally
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.2.cmp(&a.2)))
        .map(|t| t.0)
}

/// Ranks database entries by `dist` (ties by index) and votes over the first `j`.
fn classify(dist: &[f64], labels: &[usize], j: usize) -> usize {
    let mut idx: Vec<usize> = (0..dist.len()).collect();
    idx.sort_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)));
    let ranked: Vec<usize> = idx.iter().take(j).map(|&i| labels[i]).collect();
    vote(&ranked).unwrap_or(0)
}

fn accuracy(ds: &ClusterDataset, j: usize, dist: impl Fn(usize, usize) -> Result<f64>) -> Result<f64> {
    let mut hits = 0;
    for (q, &truth) in ds.query_labels.iter().enumerate() {
        let d: Vec<f64> = (0..ds.database.len()).map(|i| dist(q, i)).collect::<Result<_>>()?;
        hits += usize::from(classify(&d, &ds.labels, j) == truth);
    }
    Ok(hits as f64 / ds.queries.len() as f64)
}

/// Accuracy of voting over unembedded l2 distances.
pub fn l2_retrieval_accuracy(ds: &ClusterDataset, j: usize) -> Result<f64> {
    accuracy(ds, j, |q, i| Ok(l2(&ds.queries[q], &ds.database[i])))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RetrievalCell {
    pub delta: f64,
    pub m: usize,
    /// Mean accuracy over trials.
    pub accuracy: f64,
}

#[derive(Clone, Debug)]
pub struct Retrieval {
    pub cells: Vec<RetrievalCell>,
    pub chance: f64,
    pub baseline: f64,
    pub dataset: ClusterDataset,
    /// `retrieval` and `retrieval_summary`.
    pub tables: super::Tables,
}

/// Accuracy of `neighbors`-vote retrieval in the embedded domain over
/// `delta_list x m_list`, averaged over `trials` independent operators.
/// Binary maps use Hamming distance, others squared l2.
pub fn retrieval(cfg: &ExperimentConfig) -> Result<Retrieval> {
    cfg.validate()?;
    let map: PeriodicMap = cfg.map.parse()?;
    let ds = make_clusters(
        cfg.n,
        cfg.clusters,
        cfg.cluster_size,
        cfg.cluster_spread,
        cfg.cluster_noise,
        cfg.seed,
    )?;
    let metric = if map.is_binary() {
        DistanceMetric::HammingMean
    } else {
        DistanceMetric::SqL2Mean
    };
    let mut table = Table::new(&["delta", "M", "accuracy", "trials", "chance"]);
    let chance = 1.0 / cfg.clusters as f64;
    let mut cells = Vec::new();
    let mut tag = 0u64;
    for &delta in &cfg.delta_list {
        let spec = ProjectionSpec::universal(cfg.family, cfg.scale, delta, map_bits(&map))?;
        for &m in &cfg.m_list {
            let mut total = 0.0;
            for _ in 0..cfg.trials {
                let op = EmbeddingOperator::build(spec, map.clone(), m, cfg.n, cell_seed(cfg.seed, tag))?;
                tag += 1;
                let db = op.embed_batch(&ds.database)?;
                let qs = op.embed_batch(&ds.queries)?;
                total += accuracy(&ds, cfg.neighbors, |q, i| embedding_distance(&qs[q], &db[i], metric))?;
            }
            let acc = total / cfg.trials as f64;
            table.push(vec![
                delta.into(),
                m.into(),
                acc.into(),
                cfg.trials.into(),
                chance.into(),
            ]);
            cells.push(RetrievalCell {
                delta,
                m,
                accuracy: acc,
            });
        }
    }
    let baseline = l2_retrieval_accuracy(&ds, cfg.neighbors)?;
    let mut summary = Table::new(&["baseline_l2", "chance", "d_min", "rho_max", "queries", "database"]);
    summary.push(vec![
        baseline.into(),
        chance.into(),
        ds.d_min.into(),
        ds.rho_max.into(),
        ds.queries.len().into(),
        ds.database.len().into(),
    ]);
    Ok(Retrieval {
        cells,
        chance,
        baseline,
        dataset: ds,
        tables: vec![("retrieval".into(), table), ("retrieval_summary".into(), summary)],
    })
}
