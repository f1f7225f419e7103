//! Classification metrics, ROC machinery, fold-averaged ROC curves, and the
//! statistical tests used across the analysis (Mann-Whitney U, Friedman,
//! Welch t).
//!
//! All operations are pure. AUC is computed so that it equals the
//! Mann-Whitney pair statistic: tied scores contribute half credit.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal, StudentsT};
use thiserror::Error;

use crate::svg::{Scale, SvgDoc};

/// Sentinel threshold for the (0,0) ROC anchor: "positive only above every
/// observed score". Finite so curves stay JSON-serializable.
pub const THRESHOLD_ABOVE_ALL: f64 = f64::MAX;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("input is empty")]
    EmptyInput,
    #[error("labels must contain both classes")]
    SingleClassLabels,
    #[error("scores must be finite")]
    NonFiniteScore,
    #[error("labels must be 0 or 1, found {0}")]
    InvalidLabel(u8),
    #[error("scores and labels have different lengths ({scores} vs {labels})")]
    LengthMismatch { scores: usize, labels: usize },
    #[error("need at least {needed} curves, got {got}")]
    NotEnoughCurves { needed: usize, got: usize },
    #[error("matrix must have at least 2 rows and 2 columns")]
    DegenerateMatrix,
    #[error("each sample needs at least 2 observations")]
    SampleTooSmall,
}

/// One ROC operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RocPoint {
    pub fpr: f64,
    pub tpr: f64,
    pub threshold: f64,
}

/// ROC curve with trapezoidal AUC.
///
/// Points run from (0,0) to (1,1) with non-increasing thresholds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RocCurve {
    pub points: Vec<RocPoint>,
    pub auc: f64,
}

/// Threshold-level classification metrics plus AUC.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricBlock {
    pub sensitivity: f64,
    pub specificity: f64,
    pub accuracy: f64,
    pub balanced_accuracy: f64,
    pub f1: f64,
    pub auc: f64,
    /// Metrics whose denominator was zero and were reported as 0.
    pub degenerate: Vec<String>,
}

/// Vertically averaged ROC over folds on a fixed FPR grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeanRoc {
    pub fpr_grid: Vec<f64>,
    pub tpr_mean: Vec<f64>,
    pub tpr_std: Vec<f64>,
    pub auc_mean: f64,
    pub auc_std: f64,
    pub n_curves: usize,
}

fn validate_binary(scores: &[f64], labels: &[u8]) -> Result<(), MetricsError> {
    if scores.len() != labels.len() {
        return Err(MetricsError::LengthMismatch {
            scores: scores.len(),
            labels: labels.len(),
        });
    }
    if scores.is_empty() {
        return Err(MetricsError::EmptyInput);
    }
    if scores.iter().any(|s| !s.is_finite()) {
        return Err(MetricsError::NonFiniteScore);
    }
    if let Some(&bad) = labels.iter().find(|&&l| l > 1) {
        return Err(MetricsError::InvalidLabel(bad));
    }
    let pos = labels.iter().filter(|&&l| l == 1).count();
    if pos == 0 || pos == labels.len() {
        return Err(MetricsError::SingleClassLabels);
    }
    Ok(())
}

/// ROC curve by threshold sweep over the unique scores, AUC by trapezoid.
///
/// Tied scores are grouped into a single diagonal segment, which makes the
/// trapezoidal AUC equal to the Mann-Whitney pair statistic (half credit per
/// tied positive/negative pair).
pub fn roc_auc(scores: &[f64], labels: &[u8]) -> Result<RocCurve, MetricsError> {
    validate_binary(scores, labels)?;
    let n_pos = labels.iter().filter(|&&l| l == 1).count() as f64;
    let n_neg = labels.len() as f64 - n_pos;

    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].partial_cmp(&scores[a]).unwrap());

    let mut points = vec![RocPoint {
        fpr: 0.0,
        tpr: 0.0,
        threshold: THRESHOLD_ABOVE_ALL,
    }];
    let mut tp = 0.0;
    let mut fp = 0.0;
    let mut i = 0;
    while i < order.len() {
        let s = scores[order[i]];
        let mut j = i;
        while j < order.len() && scores[order[j]] == s {
            if labels[order[j]] == 1 {
                tp += 1.0;
            } else {
                fp += 1.0;
            }
            j += 1;
        }
        points.push(RocPoint {
            fpr: fp / n_neg,
            tpr: tp / n_pos,
            threshold: s,
        });
        i = j;
    }

    let mut auc = 0.0;
    for w in points.windows(2) {
        auc += (w[1].fpr - w[0].fpr) * (w[0].tpr + w[1].tpr) / 2.0;
    }
    Ok(RocCurve { points, auc })
}

/// Standard confusion-matrix metrics at a probability threshold (predicted
/// positive iff p >= threshold), plus the threshold-free AUC.
///
/// Division-by-zero cases yield 0 and are listed in `degenerate` instead of
/// erroring.
pub fn confusion_metrics(
    probabilities: &[f64],
    labels: &[u8],
    threshold: f64,
) -> Result<MetricBlock, MetricsError> {
    if probabilities.len() != labels.len() {
        return Err(MetricsError::LengthMismatch {
            scores: probabilities.len(),
            labels: labels.len(),
        });
    }
    if probabilities.is_empty() {
        return Err(MetricsError::EmptyInput);
    }
    if let Some(&bad) = labels.iter().find(|&&l| l > 1) {
        return Err(MetricsError::InvalidLabel(bad));
    }

    let (mut tp, mut fp, mut tn, mut fn_) = (0.0, 0.0, 0.0, 0.0);
    for (&p, &l) in probabilities.iter().zip(labels) {
        match (p >= threshold, l == 1) {
            (true, true) => tp += 1.0,
            (true, false) => fp += 1.0,
            (false, true) => fn_ += 1.0,
            (false, false) => tn += 1.0,
        }
    }

    let mut degenerate = Vec::new();
    let mut ratio = |num: f64, den: f64, name: &str| {
        if den == 0.0 {
            degenerate.push(name.to_string());
            0.0
        } else {
            num / den
        }
    };
    let sensitivity = ratio(tp, tp + fn_, "sensitivity");
    let specificity = ratio(tn, tn + fp, "specificity");
    let accuracy = (tp + tn) / probabilities.len() as f64;
    let f1 = ratio(2.0 * tp, 2.0 * tp + fp + fn_, "f1");
    let auc = match roc_auc(probabilities, labels) {
        Ok(c) => c.auc,
        Err(MetricsError::SingleClassLabels) => {
            degenerate.push("auc".to_string());
            0.0
        }
        Err(e) => return Err(e),
    };
    Ok(MetricBlock {
        sensitivity,
        specificity,
        accuracy,
        balanced_accuracy: (sensitivity + specificity) / 2.0,
        f1,
        auc,
        degenerate,
    })
}

/// TPR of the piecewise-linear ROC at a query FPR. Vertical runs collapse to
/// their topmost point.
fn interp_tpr(curve: &RocCurve, x: f64) -> f64 {
    // Condense to one vertex per distinct fpr, keeping the max tpr.
    let mut vertices: Vec<(f64, f64)> = Vec::with_capacity(curve.points.len());
    for p in &curve.points {
        match vertices.last_mut() {
            Some(last) if last.0 == p.fpr => last.1 = last.1.max(p.tpr),
            _ => vertices.push((p.fpr, p.tpr)),
        }
    }
    if x <= vertices[0].0 {
        return vertices[0].1;
    }
    for w in vertices.windows(2) {
        let (x0, y0) = w[0];
        let (x1, y1) = w[1];
        if x <= x1 {
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
        }
    }
    vertices.last().unwrap().1
}

/// Vertical ROC averaging: TPR linearly interpolated per curve on a fixed
/// FPR grid (step 0.01), with population mean/std of the per-curve AUCs.
pub fn mean_roc(curves: &[RocCurve]) -> Result<MeanRoc, MetricsError> {
    if curves.len() < 2 {
        return Err(MetricsError::NotEnoughCurves {
            needed: 2,
            got: curves.len(),
        });
    }
    let fpr_grid: Vec<f64> = (0..=100).map(|i| i as f64 / 100.0).collect();
    let mut tpr_mean = Vec::with_capacity(fpr_grid.len());
    let mut tpr_std = Vec::with_capacity(fpr_grid.len());
    for &x in &fpr_grid {
        let tprs: Vec<f64> = curves.iter().map(|c| interp_tpr(c, x)).collect();
        let (m, s) = population_mean_std(&tprs);
        tpr_mean.push(m);
        tpr_std.push(s);
    }
    let aucs: Vec<f64> = curves.iter().map(|c| c.auc).collect();
    let (auc_mean, auc_std) = population_mean_std(&aucs);
    Ok(MeanRoc {
        fpr_grid,
        tpr_mean,
        tpr_std,
        auc_mean,
        auc_std,
        n_curves: curves.len(),
    })
}

pub(crate) fn population_mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Threshold of the ROC point closest to the upper-left corner (0,1),
/// minimizing (1-TPR)^2 + FPR^2. Ties return the higher threshold.
pub fn upper_left_threshold(curve: &RocCurve) -> f64 {
    let mut best: Option<(f64, f64)> = None; // (squared distance, threshold)
    for p in &curve.points {
        let d2 = (1.0 - p.tpr) * (1.0 - p.tpr) + p.fpr * p.fpr;
        let replace = match best {
            None => true,
            Some((bd, bt)) => d2 < bd || (d2 == bd && p.threshold > bt),
        };
        if replace {
            best = Some((d2, p.threshold));
        }
    }
    best.map(|(_, t)| t).unwrap_or(THRESHOLD_ABOVE_ALL)
}

/// How a test p-value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PvalueMethod {
    Exact,
    NormalApprox,
}

/// Mann-Whitney U result; `u` is the statistic of the first sample.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MannWhitneyResult {
    pub u: f64,
    pub p: f64,
    pub method: PvalueMethod,
}

/// Midranks of the pooled sample, ties averaged.
fn midranks(pooled: &[f64]) -> Vec<f64> {
    let n = pooled.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| pooled[a].partial_cmp(&pooled[b]).unwrap());
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j < n && pooled[order[j]] == pooled[order[i]] {
            j += 1;
        }
        let avg = (i + 1 + j) as f64 / 2.0; // mean of ranks i+1 ..= j
        for &idx in &order[i..j] {
            ranks[idx] = avg;
        }
        i = j;
    }
    ranks
}

/// Two-sided Mann-Whitney U test.
///
/// Exact permutation p-value (midrank ties included) when
/// `n_a * n_b <= 400`, computed by dynamic programming over doubled rank
/// sums; otherwise normal approximation with tie and continuity corrections.
pub fn mann_whitney_u(a: &[f64], b: &[f64]) -> Result<MannWhitneyResult, MetricsError> {
    if a.is_empty() || b.is_empty() {
        return Err(MetricsError::EmptyInput);
    }
    if a.iter().chain(b.iter()).any(|x| !x.is_finite()) {
        return Err(MetricsError::NonFiniteScore);
    }
    let (na, nb) = (a.len(), b.len());
    let pooled: Vec<f64> = a.iter().chain(b.iter()).copied().collect();
    let ranks = midranks(&pooled);
    let r_a: f64 = ranks[..na].iter().sum();
    let u_a = r_a - (na * (na + 1)) as f64 / 2.0;

    if na * nb <= 400 {
        let p = exact_mwu_p(&ranks, na, u_a);
        Ok(MannWhitneyResult {
            u: u_a,
            p,
            method: PvalueMethod::Exact,
        })
    } else {
        let n = (na + nb) as f64;
        let mu = (na * nb) as f64 / 2.0;
        let tie_term: f64 = tie_group_sizes(&pooled)
            .iter()
            .map(|&t| (t * t * t - t) as f64)
            .sum();
        let var = (na * nb) as f64 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
        if var <= 0.0 {
            return Ok(MannWhitneyResult {
                u: u_a,
                p: 1.0,
                method: PvalueMethod::NormalApprox,
            });
        }
        let z = ((u_a - mu).abs() - 0.5).max(0.0) / var.sqrt();
        let normal = Normal::new(0.0, 1.0).unwrap();
        let p = (2.0 * normal.sf(z)).min(1.0);
        Ok(MannWhitneyResult {
            u: u_a,
            p,
            method: PvalueMethod::NormalApprox,
        })
    }
}

fn tie_group_sizes(pooled: &[f64]) -> Vec<usize> {
    let mut sorted = pooled.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut groups = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        groups.push(j - i);
        i = j;
    }
    groups
}

/// Exact two-sided p for the U statistic under the permutation null.
///
/// Counts, for every way of assigning `na` of the pooled midranks to group a,
/// the distribution of the doubled rank sum (doubling keeps sums integral
/// under midrank ties). Counts stay below 2^53 in the exact regime, so f64
/// arithmetic is lossless.
fn exact_mwu_p(ranks: &[f64], na: usize, u_obs: f64) -> f64 {
    let n = ranks.len();
    let doubled: Vec<usize> = ranks.iter().map(|&r| (2.0 * r).round() as usize).collect();
    let smax: usize = doubled.iter().sum();
    // ways[k][s] = #subsets of size k with doubled rank sum s
    let mut ways = vec![vec![0.0_f64; smax + 1]; na + 1];
    ways[0][0] = 1.0;
    for &d in &doubled {
        for k in (0..na).rev() {
            for s in (0..=smax.saturating_sub(d)).rev() {
                if ways[k][s] > 0.0 {
                    ways[k + 1][s + d] = ways[k + 1][s + d] + ways[k][s];
                }
            }
        }
    }
    let total: f64 = ways[na].iter().sum();
    let nb = n - na;
    // doubled U = doubled rank sum - na(na+1)
    let offset = (na * (na + 1)) as f64;
    let u2_obs = 2.0 * u_obs;
    let u2_max = 2.0 * (na * nb) as f64;
    let lo = u2_obs.min(u2_max - u2_obs);
    let hi = u2_obs.max(u2_max - u2_obs);
    let mut p = 0.0;
    for (s, &w) in ways[na].iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let u2 = s as f64 - offset;
        if u2 <= lo + 1e-9 || u2 >= hi - 1e-9 {
            p += w;
        }
    }
    (p / total).min(1.0)
}

/// Friedman rank test result.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FriedmanResult {
    pub chi2: f64,
    pub p: f64,
}

/// Friedman test over a subjects x treatments matrix, midranks for ties,
/// with the standard tie-correction divisor. Fully tied data yields
/// statistic 0 and p = 1.
pub fn friedman_test(matrix: &[Vec<f64>]) -> Result<FriedmanResult, MetricsError> {
    let n = matrix.len();
    if n < 2 {
        return Err(MetricsError::DegenerateMatrix);
    }
    let k = matrix[0].len();
    if k < 2 || matrix.iter().any(|row| row.len() != k) {
        return Err(MetricsError::DegenerateMatrix);
    }
    let mut rank_sums = vec![0.0; k];
    let mut tie_term = 0.0;
    for row in matrix {
        let ranks = midranks(row);
        for (j, &r) in ranks.iter().enumerate() {
            rank_sums[j] += r;
        }
        tie_term += tie_group_sizes(row)
            .iter()
            .map(|&t| (t * t * t - t) as f64)
            .sum::<f64>();
    }
    let (nf, kf) = (n as f64, k as f64);
    let ssbn: f64 = rank_sums.iter().map(|&r| r * r).sum();
    let uncorrected = 12.0 / (nf * kf * (kf + 1.0)) * ssbn - 3.0 * nf * (kf + 1.0);
    let correction = 1.0 - tie_term / (nf * kf * (kf * kf - 1.0));
    if correction <= 0.0 {
        // Every row fully tied: no information, test degenerates.
        return Ok(FriedmanResult { chi2: 0.0, p: 1.0 });
    }
    let chi2 = (uncorrected / correction).max(0.0);
    let dist = ChiSquared::new(kf - 1.0).unwrap();
    Ok(FriedmanResult {
        chi2,
        p: dist.sf(chi2).clamp(0.0, 1.0),
    })
}

/// Welch's unequal-variance t-test result.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WelchResult {
    pub t: f64,
    pub df: f64,
    pub p: f64,
}

/// Two-sided Welch t-test with Welch-Satterthwaite degrees of freedom.
/// Sample variances use the n-1 denominator. Zero variance in both samples
/// with equal means returns t = 0, p = 1.
pub fn welch_t(a: &[f64], b: &[f64]) -> Result<WelchResult, MetricsError> {
    if a.len() < 2 || b.len() < 2 {
        return Err(MetricsError::SampleTooSmall);
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let ma = a.iter().sum::<f64>() / na;
    let mb = b.iter().sum::<f64>() / nb;
    let va = a.iter().map(|x| (x - ma) * (x - ma)).sum::<f64>() / (na - 1.0);
    let vb = b.iter().map(|x| (x - mb) * (x - mb)).sum::<f64>() / (nb - 1.0);
    let se2 = va / na + vb / nb;
    if se2 == 0.0 {
        return Ok(if ma == mb {
            WelchResult {
                t: 0.0,
                df: na + nb - 2.0,
                p: 1.0,
            }
        } else {
            WelchResult {
                t: if ma > mb {
                    f64::INFINITY
                } else {
                    f64::NEG_INFINITY
                },
                df: na + nb - 2.0,
                p: 0.0,
            }
        });
    }
    let t = (ma - mb) / se2.sqrt();
    let df = se2 * se2
        / ((va / na) * (va / na) / (na - 1.0) + (vb / nb) * (vb / nb) / (nb - 1.0));
    let dist = StudentsT::new(0.0, 1.0, df).unwrap();
    let p = (2.0 * dist.sf(t.abs())).clamp(0.0, 1.0);
    Ok(WelchResult { t, df, p })
}

/// ROC curve as `fpr,tpr,threshold` CSV.
pub fn roc_csv(curve: &RocCurve) -> String {
    let mut out = String::from("fpr,tpr,threshold\n");
    for p in &curve.points {
        out.push_str(&format!("{},{},{}\n", p.fpr, p.tpr, p.threshold));
    }
    out
}

/// Mean ROC as `fpr,tpr_mean,tpr_std` CSV.
pub fn mean_roc_csv(mr: &MeanRoc) -> String {
    let mut out = String::from("fpr,tpr_mean,tpr_std\n");
    for i in 0..mr.fpr_grid.len() {
        out.push_str(&format!(
            "{},{},{}\n",
            mr.fpr_grid[i], mr.tpr_mean[i], mr.tpr_std[i]
        ));
    }
    out
}

/// Mean ROC figure: one banded mean curve per labeled entry plus the chance
/// diagonal, AUC mean +/- std in the legend.
pub fn mean_roc_svg(entries: &[(String, MeanRoc)]) -> String {
    let (w, h) = (460.0, 420.0);
    let sx = Scale::new((0.0, 1.0), (60.0, w - 20.0));
    let sy = Scale::new((0.0, 1.0), (h - 50.0, 20.0));
    let mut doc = SvgDoc::new(w, h);
    let palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

    doc.line(sx.map(0.0), sy.map(0.0), sx.map(1.0), sy.map(1.0), "#999999", 1.0);
    for (i, (label, mr)) in entries.iter().enumerate() {
        let color = palette[i % palette.len()];
        let mean_pts: Vec<(f64, f64)> = mr
            .fpr_grid
            .iter()
            .zip(&mr.tpr_mean)
            .map(|(&x, &y)| (sx.map(x), sy.map(y)))
            .collect();
        let upper: Vec<(f64, f64)> = mr
            .fpr_grid
            .iter()
            .zip(mr.tpr_mean.iter().zip(&mr.tpr_std))
            .map(|(&x, (&m, &s))| (sx.map(x), sy.map((m + s).min(1.0))))
            .collect();
        let lower: Vec<(f64, f64)> = mr
            .fpr_grid
            .iter()
            .zip(mr.tpr_mean.iter().zip(&mr.tpr_std))
            .map(|(&x, (&m, &s))| (sx.map(x), sy.map((m - s).max(0.0))))
            .collect();
        doc.band(&upper, &lower, color, 0.15);
        doc.polyline(&mean_pts, color, 2.0);
        doc.text(
            70.0,
            35.0 + 16.0 * i as f64,
            11.0,
            "start",
            &format!("{} AUC {:.3} +/- {:.3}", label, mr.auc_mean, mr.auc_std),
        );
        doc.rect(58.0, 27.0 + 16.0 * i as f64, 9.0, 9.0, color, 1.0);
    }
    for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        doc.text(sx.map(t), h - 32.0, 10.0, "middle", &format!("{:.2}", t));
        doc.text(50.0, sy.map(t) + 3.0, 10.0, "end", &format!("{:.2}", t));
    }
    doc.line(sx.map(0.0), sy.map(0.0), sx.map(1.0), sy.map(0.0), "#333333", 1.0);
    doc.line(sx.map(0.0), sy.map(0.0), sx.map(0.0), sy.map(1.0), "#333333", 1.0);
    doc.text(w / 2.0, h - 12.0, 11.0, "middle", "False positive rate");
    doc.text(14.0, h / 2.0, 11.0, "middle", "TPR");
    doc.render()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roc_auc_matches_pair_counting_example() {
        let curve = roc_auc(&[0.1, 0.4, 0.35, 0.8], &[0, 0, 1, 1]).unwrap();
        assert!((curve.auc - 0.75).abs() < 1e-12);
    }

    #[test]
    fn roc_auc_perfect_separation() {
        let curve = roc_auc(&[0.1, 0.2, 0.8, 0.9], &[0, 0, 1, 1]).unwrap();
        assert_eq!(curve.auc, 1.0);
    }

    #[test]
    fn roc_auc_all_tied_scores_is_half() {
        let curve = roc_auc(&[0.3, 0.3, 0.3, 0.3], &[0, 1, 0, 1]).unwrap();
        assert!((curve.auc - 0.5).abs() < 1e-12);
    }

    #[test]
    fn roc_auc_rejects_single_class() {
        assert!(matches!(
            roc_auc(&[0.1, 0.2], &[1, 1]),
            Err(MetricsError::SingleClassLabels)
        ));
    }

    #[test]
    fn roc_auc_invariant_under_monotone_transform() {
        let scores = [0.11, 0.52, 0.3, 0.77, 0.52, 0.9, 0.01];
        let labels = [0, 1, 0, 1, 0, 1, 0];
        let base = roc_auc(&scores, &labels).unwrap().auc;
        let transformed: Vec<f64> = scores.iter().map(|s| (3.0 * s).exp() + 1.0).collect();
        let t = roc_auc(&transformed, &labels).unwrap().auc;
        assert!((base - t).abs() < 1e-12);
    }

    #[test]
    fn confusion_metrics_hand_example() {
        // TP=3, FP=1, FN=1, TN=5
        let probs = [0.9, 0.8, 0.7, 0.6, 0.4, 0.3, 0.3, 0.2, 0.1, 0.1];
        let labels = [1, 1, 1, 0, 1, 0, 0, 0, 0, 0];
        let m = confusion_metrics(&probs, &labels, 0.5).unwrap();
        assert!((m.sensitivity - 0.75).abs() < 1e-12);
        assert!((m.specificity - 5.0 / 6.0).abs() < 1e-12);
        assert!((m.f1 - 0.75).abs() < 1e-12);
        assert!((m.balanced_accuracy - (0.75 + 5.0 / 6.0) / 2.0).abs() < 1e-12);
        assert!(m.degenerate.is_empty());
    }

    #[test]
    fn confusion_metrics_perfect_predictions() {
        let m = confusion_metrics(&[1.0, 1.0, 0.0, 0.0], &[1, 1, 0, 0], 0.5).unwrap();
        assert_eq!(m.sensitivity, 1.0);
        assert_eq!(m.specificity, 1.0);
        assert_eq!(m.accuracy, 1.0);
        assert_eq!(m.f1, 1.0);
        assert_eq!(m.auc, 1.0);
    }

    #[test]
    fn confusion_metrics_all_positive_predictions() {
        let m = confusion_metrics(&[0.9, 0.8, 0.9, 0.7], &[1, 0, 1, 0], 0.0).unwrap();
        assert_eq!(m.sensitivity, 1.0);
        assert_eq!(m.specificity, 0.0);
    }

    #[test]
    fn balanced_accuracy_is_exact_mean() {
        let m = confusion_metrics(&[0.9, 0.2, 0.6, 0.3], &[1, 0, 0, 1], 0.5).unwrap();
        assert_eq!(m.balanced_accuracy, (m.sensitivity + m.specificity) / 2.0);
    }

    #[test]
    fn mean_roc_of_identical_curves_is_identity() {
        let c = roc_auc(&[0.1, 0.7, 0.45, 0.9, 0.3], &[0, 1, 0, 1, 0]).unwrap();
        let mr = mean_roc(&[c.clone(), c.clone(), c.clone()]).unwrap();
        assert!(mr.auc_std.abs() < 1e-15);
        assert!((mr.auc_mean - c.auc).abs() < 1e-15);
        for (i, &x) in mr.fpr_grid.iter().enumerate() {
            assert!((mr.tpr_mean[i] - interp_tpr(&c, x)).abs() < 1e-9);
            assert!(mr.tpr_std[i].abs() < 1e-9);
        }
    }

    #[test]
    fn mean_roc_auc_stats_are_population() {
        let c1 = RocCurve {
            points: vec![
                RocPoint { fpr: 0.0, tpr: 0.0, threshold: THRESHOLD_ABOVE_ALL },
                RocPoint { fpr: 1.0, tpr: 1.0, threshold: 0.0 },
            ],
            auc: 0.8,
        };
        let mut c2 = c1.clone();
        c2.auc = 0.9;
        let mr = mean_roc(&[c1, c2]).unwrap();
        assert!((mr.auc_mean - 0.85).abs() < 1e-12);
        assert!((mr.auc_std - 0.05).abs() < 1e-12);
    }

    #[test]
    fn upper_left_picks_best_corner_point() {
        let curve = RocCurve {
            points: vec![
                RocPoint { fpr: 0.0, tpr: 0.0, threshold: THRESHOLD_ABOVE_ALL },
                RocPoint { fpr: 0.2, tpr: 0.9, threshold: 0.6 },
                RocPoint { fpr: 1.0, tpr: 1.0, threshold: 0.1 },
            ],
            auc: 0.85,
        };
        assert_eq!(upper_left_threshold(&curve), 0.6);
    }

    #[test]
    fn upper_left_tie_returns_higher_threshold() {
        // Diagonal: (0,0) and (1,1) are equidistant from (0,1).
        let curve = roc_auc(&[0.5, 0.5], &[0, 1]).unwrap();
        assert_eq!(upper_left_threshold(&curve), THRESHOLD_ABOVE_ALL);
    }

    #[test]
    fn mann_whitney_separated_example() {
        let r = mann_whitney_u(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap();
        assert_eq!(r.u, 0.0);
        assert_eq!(r.method, PvalueMethod::Exact);
        assert!((r.p - 0.1).abs() < 1e-12);
    }

    #[test]
    fn mann_whitney_identical_samples_p_one() {
        let r = mann_whitney_u(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(r.p, 1.0);
    }

    #[test]
    fn mann_whitney_large_shift_tiny_p() {
        let a: Vec<f64> = (0..40).map(|i| i as f64 * 0.1).collect();
        let b: Vec<f64> = (0..40).map(|i| 50.0 + i as f64 * 0.1).collect();
        let r = mann_whitney_u(&a, &b).unwrap();
        assert_eq!(r.method, PvalueMethod::NormalApprox);
        assert!(r.p < 1e-6);
    }

    #[test]
    fn friedman_identical_columns() {
        let m: Vec<Vec<f64>> = (0..5).map(|i| vec![i as f64; 3]).collect();
        let r = friedman_test(&m).unwrap();
        assert_eq!(r.chi2, 0.0);
        assert_eq!(r.p, 1.0);
    }

    #[test]
    fn friedman_fully_ordered_columns() {
        // col0 < col1 < col2 in every row: chi2 = 20 at N=10, k=3.
        let m: Vec<Vec<f64>> = (0..10)
            .map(|i| vec![i as f64, i as f64 + 10.0, i as f64 + 20.0])
            .collect();
        let r = friedman_test(&m).unwrap();
        assert!((r.chi2 - 20.0).abs() < 1e-9);
        assert!((r.p - 4.5399929762484854e-5).abs() < 1e-12);
    }

    #[test]
    fn welch_identical_samples() {
        let r = welch_t(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(r.t, 0.0);
        assert_eq!(r.p, 1.0);
    }

    #[test]
    fn welch_antisymmetry() {
        let a = [1.0, 2.5, 0.7, 1.8];
        let b = [0.2, 0.9, 0.1, 0.4];
        let r1 = welch_t(&a, &b).unwrap();
        let r2 = welch_t(&b, &a).unwrap();
        assert!((r1.t + r2.t).abs() < 1e-12);
        assert!((r1.p - r2.p).abs() < 1e-12);
    }

    #[test]
    fn welch_zero_variance_equal_means() {
        let r = welch_t(&[2.0, 2.0, 2.0], &[2.0, 2.0]).unwrap();
        assert_eq!(r.t, 0.0);
        assert_eq!(r.p, 1.0);
    }

    #[test]
    fn roc_csv_has_header_and_rows() {
        let c = roc_auc(&[0.2, 0.8], &[0, 1]).unwrap();
        let csv = roc_csv(&c);
        assert!(csv.starts_with("fpr,tpr,threshold\n"));
        assert_eq!(csv.lines().count(), 1 + c.points.len());
    }
}
