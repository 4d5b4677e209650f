//! The hypothesis tests used to compare trial sets: unpaired two-sample
//! t-test, two-factor fixed-effects ANOVA, and Pearson correlation, with
//! exact tail probabilities via the regularized incomplete beta function.

use crate::error::{Error, Result};
use crate::special::regularized_incomplete_beta;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TTestVariant {
    /// Student's t with pooled variance; df = n_a + n_b - 2.
    Pooled,
    /// Welch's t with the Welch-Satterthwaite df approximation.
    Welch,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TTestResult {
    /// Sign convention: positive when group A's mean exceeds group B's.
    /// Infinite when the groups have zero variance but different means.
    pub t_statistic: f64,
    pub degrees_of_freedom: f64,
    pub p_value: f64,
    pub two_sided: bool,
}

/// Unpaired two-sample t-test.
///
/// Degenerate inputs do not error: zero variance with equal means gives
/// `t = 0, p = 1`; zero variance with unequal means gives an infinite t and
/// `p = 0`. Callers that need to surface these cases can test
/// `t_statistic.is_finite()`.
pub fn t_test_unpaired(a: &[f64], b: &[f64], variant: TTestVariant) -> Result<TTestResult> {
    check_group(a, "group_a")?;
    check_group(b, "group_b")?;
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (ma, mb) = (mean(a), mean(b));
    let (va, vb) = (sample_variance(a, ma), sample_variance(b, mb));

    let (se, df) = match variant {
        TTestVariant::Pooled => {
            let df = na + nb - 2.0;
            let sp2 = ((na - 1.0) * va + (nb - 1.0) * vb) / df;
            ((sp2 * (1.0 / na + 1.0 / nb)).sqrt(), df)
        }
        TTestVariant::Welch => {
            let (wa, wb) = (va / na, vb / nb);
            let se2 = wa + wb;
            let df = se2 * se2 / (wa * wa / (na - 1.0) + wb * wb / (nb - 1.0));
            (se2.sqrt(), df)
        }
    };

    if se == 0.0 {
        // Both variances are zero; df for Welch is 0/0 here, so report the
        // pooled df in either variant.
        let df = na + nb - 2.0;
        return Ok(if ma == mb {
            TTestResult {
                t_statistic: 0.0,
                degrees_of_freedom: df,
                p_value: 1.0,
                two_sided: true,
            }
        } else {
            TTestResult {
                t_statistic: (ma - mb).signum() * f64::INFINITY,
                degrees_of_freedom: df,
                p_value: 0.0,
                two_sided: true,
            }
        });
    }

    let t = (ma - mb) / se;
    let p = tail_probability(t, TailDistribution::StudentT { df }, Sidedness::Two)?;
    Ok(TTestResult {
        t_statistic: t,
        degrees_of_freedom: df,
        p_value: p,
        two_sided: true,
    })
}

fn check_group(values: &[f64], name: &'static str) -> Result<()> {
    if values.len() < 2 {
        return Err(Error::TooFewObservations {
            context: name,
            required: 2,
            found: values.len(),
        });
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite(name));
    }
    Ok(())
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn sample_variance(values: &[f64], mean: f64) -> f64 {
    values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (values.len() - 1) as f64
}

/// Observations organized by the levels of two crossed factors.
///
/// Levels are kept in first-appearance order, so the factor-A/factor-B rows
/// of an [`AnovaResult`] are stable for a given input order.
#[derive(Debug, Clone)]
pub struct FactorialTable {
    levels_a: Vec<String>,
    levels_b: Vec<String>,
    cells: Vec<Vec<f64>>, // row-major: cell (i, j) at i * levels_b.len() + j
}

impl FactorialTable {
    pub fn from_observations<I>(observations: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, String, f64)>,
    {
        let mut levels_a: Vec<String> = Vec::new();
        let mut levels_b: Vec<String> = Vec::new();
        let mut flat: Vec<(usize, usize, f64)> = Vec::new();
        for (la, lb, value) in observations {
            if !value.is_finite() {
                return Err(Error::NonFinite("factorial observation"));
            }
            let i = index_of(&mut levels_a, la);
            let j = index_of(&mut levels_b, lb);
            flat.push((i, j, value));
        }
        let (na, nb) = (levels_a.len(), levels_b.len());
        if na == 0 {
            return Err(Error::TooFewObservations {
                context: "factorial table",
                required: 1,
                found: 0,
            });
        }
        let mut cells = vec![Vec::new(); na * nb];
        for (i, j, value) in flat {
            cells[i * nb + j].push(value);
        }
        if let Some(idx) = cells.iter().position(Vec::is_empty) {
            return Err(Error::Unbalanced(format!(
                "cell ({}, {}) has no observations",
                levels_a[idx / nb],
                levels_b[idx % nb]
            )));
        }
        Ok(Self {
            levels_a,
            levels_b,
            cells,
        })
    }

    pub fn levels_a(&self) -> &[String] {
        &self.levels_a
    }

    pub fn levels_b(&self) -> &[String] {
        &self.levels_b
    }

    pub fn cell(&self, i: usize, j: usize) -> &[f64] {
        &self.cells[i * self.levels_b.len() + j]
    }

    /// Observations per cell when the design is balanced.
    fn replicates(&self) -> Result<usize> {
        let r = self.cells[0].len();
        if self.cells.iter().any(|c| c.len() != r) {
            let counts: Vec<usize> = self.cells.iter().map(Vec::len).collect();
            return Err(Error::Unbalanced(format!(
                "cell counts differ: {counts:?}"
            )));
        }
        Ok(r)
    }
}

fn index_of(levels: &mut Vec<String>, level: String) -> usize {
    match levels.iter().position(|l| *l == level) {
        Some(i) => i,
        None => {
            levels.push(level);
            levels.len() - 1
        }
    }
}

/// One row of an ANOVA table. `f_statistic` and `p_value` are `None` for the
/// residual row and whenever the residual mean square is zero (the
/// F-undefined degenerate case).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnovaEffect {
    pub sum_of_squares: f64,
    pub df: usize,
    pub f_statistic: Option<f64>,
    pub p_value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnovaResult {
    pub factor_a: AnovaEffect,
    pub factor_b: AnovaEffect,
    /// `None` with one observation per cell, where the interaction is not
    /// separable and is pooled into the residual.
    pub interaction: Option<AnovaEffect>,
    pub residual: AnovaEffect,
    pub ss_total: f64,
}

/// Balanced two-factor fixed-effects ANOVA.
pub fn anova_two_way(table: &FactorialTable) -> Result<AnovaResult> {
    let (na, nb) = (table.levels_a.len(), table.levels_b.len());
    if na < 2 || nb < 2 {
        return Err(Error::InvalidParameter {
            name: "factorial table",
            reason: format!("each factor needs at least 2 levels, got {na} x {nb}"),
        });
    }
    let r = table.replicates()?;

    let n_total = (na * nb * r) as f64;
    let grand: f64 = table.cells.iter().flatten().sum::<f64>() / n_total;

    let mut ss_total = 0.0;
    for v in table.cells.iter().flatten() {
        ss_total += (v - grand) * (v - grand);
    }

    let cell_mean =
        |i: usize, j: usize| table.cell(i, j).iter().sum::<f64>() / r as f64;
    let mut ss_a = 0.0;
    for i in 0..na {
        let row_mean = (0..nb).map(|j| cell_mean(i, j)).sum::<f64>() / nb as f64;
        ss_a += (nb * r) as f64 * (row_mean - grand) * (row_mean - grand);
    }
    let mut ss_b = 0.0;
    for j in 0..nb {
        let col_mean = (0..na).map(|i| cell_mean(i, j)).sum::<f64>() / na as f64;
        ss_b += (na * r) as f64 * (col_mean - grand) * (col_mean - grand);
    }
    let mut ss_cells = 0.0;
    for i in 0..na {
        for j in 0..nb {
            let m = cell_mean(i, j);
            ss_cells += r as f64 * (m - grand) * (m - grand);
        }
    }
    // Round-off can push these a hair below zero; they are sums of squares.
    let ss_ab = (ss_cells - ss_a - ss_b).max(0.0);
    let ss_within = (ss_total - ss_cells).max(0.0);

    let (df_a, df_b, df_ab) = (na - 1, nb - 1, (na - 1) * (nb - 1));
    let (ss_res, df_res, has_interaction) = if r == 1 {
        (ss_ab, df_ab, false)
    } else {
        (ss_within, na * nb * (r - 1), true)
    };

    let ms_res = ss_res / df_res as f64;
    let effect = |ss: f64, df: usize| -> Result<AnovaEffect> {
        let (f_statistic, p_value) = if ms_res > 0.0 {
            let f = (ss / df as f64) / ms_res;
            let p = tail_probability(
                f,
                TailDistribution::FisherF {
                    df1: df as f64,
                    df2: df_res as f64,
                },
                Sidedness::One,
            )?;
            (Some(f), Some(p))
        } else {
            (None, None)
        };
        Ok(AnovaEffect {
            sum_of_squares: ss,
            df,
            f_statistic,
            p_value,
        })
    };

    Ok(AnovaResult {
        factor_a: effect(ss_a, df_a)?,
        factor_b: effect(ss_b, df_b)?,
        interaction: if has_interaction {
            Some(effect(ss_ab, df_ab)?)
        } else {
            None
        },
        residual: AnovaEffect {
            sum_of_squares: ss_res,
            df: df_res,
            f_statistic: None,
            p_value: None,
        },
        ss_total,
    })
}

/// Sample Pearson correlation coefficient.
pub fn pearson_r(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Misaligned(format!(
            "pearson_r inputs have lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 3 {
        return Err(Error::TooFewObservations {
            context: "pearson_r",
            required: 3,
            found: x.len(),
        });
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("pearson_r input"));
    }
    let (mx, my) = (mean(x), mean(y));
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (xv, yv) in x.iter().zip(y) {
        let (dx, dy) = (xv - mx, yv - my);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 {
        return Err(Error::ZeroVariance("x"));
    }
    if syy == 0.0 {
        return Err(Error::ZeroVariance("y"));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailDistribution {
    StudentT { df: f64 },
    FisherF { df1: f64, df2: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sidedness {
    One,
    Two,
}

/// Exact tail probability of a test statistic.
///
/// Student's t: one-sided is the upper tail P(T > t); two-sided is
/// P(|T| > |t|). Fisher's F: one-sided is the upper tail; two-sided doubles
/// the smaller tail (rarely wanted; ANOVA uses one-sided).
pub fn tail_probability(
    statistic: f64,
    distribution: TailDistribution,
    sidedness: Sidedness,
) -> Result<f64> {
    if !statistic.is_finite() {
        return Err(Error::NonFinite("statistic"));
    }
    let p = match distribution {
        TailDistribution::StudentT { df } => {
            if !(df.is_finite() && df > 0.0) {
                return Err(Error::InvalidParameter {
                    name: "df",
                    reason: format!("must be positive and finite, got {df}"),
                });
            }
            let x = df / (df + statistic * statistic);
            let two_sided = regularized_incomplete_beta(df / 2.0, 0.5, x)?;
            match sidedness {
                Sidedness::Two => two_sided,
                Sidedness::One => {
                    if statistic >= 0.0 {
                        two_sided / 2.0
                    } else {
                        1.0 - two_sided / 2.0
                    }
                }
            }
        }
        TailDistribution::FisherF { df1, df2 } => {
            if !(df1.is_finite() && df1 > 0.0 && df2.is_finite() && df2 > 0.0) {
                return Err(Error::InvalidParameter {
                    name: "df1, df2",
                    reason: format!("must be positive and finite, got df1={df1}, df2={df2}"),
                });
            }
            let upper = if statistic <= 0.0 {
                1.0
            } else {
                regularized_incomplete_beta(
                    df2 / 2.0,
                    df1 / 2.0,
                    df2 / (df2 + df1 * statistic),
                )?
            };
            match sidedness {
                Sidedness::One => upper,
                Sidedness::Two => 2.0 * upper.min(1.0 - upper),
            }
        }
    };
    Ok(p.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn identical_groups_give_t_zero_p_one() {
        let g = [1.0, 2.0, 3.0];
        let r = t_test_unpaired(&g, &g, TTestVariant::Pooled).unwrap();
        assert_eq!(r.t_statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
        assert_eq!(r.degrees_of_freedom, 4.0);
    }

    #[test]
    fn pooled_t_matches_reference_values() {
        let a = [2.1, 2.5, 2.3, 2.2];
        let b = [3.1, 2.9, 3.3, 3.0];
        let r = t_test_unpaired(&a, &b, TTestVariant::Pooled).unwrap();
        assert_eq!(r.degrees_of_freedom, 6.0);
        assert_relative_eq!(r.t_statistic, -6.624629369686605, max_relative = 1e-12);
        assert_relative_eq!(r.p_value, 0.0005701755793736367, max_relative = 1e-9);
    }

    #[test]
    fn welch_t_matches_reference_values() {
        let a = [1.1, 2.0, 2.9, 4.2, 5.1];
        let b = [2.0, 2.1, 2.2, 1.9, 2.05, 1.95];
        let r = t_test_unpaired(&a, &b, TTestVariant::Welch).unwrap();
        assert_relative_eq!(r.t_statistic, 1.4175497702517086, max_relative = 1e-12);
        assert_relative_eq!(r.degrees_of_freedom, 4.029776446596723, max_relative = 1e-12);
        assert_relative_eq!(r.p_value, 0.22879181227670942, max_relative = 1e-9);
    }

    #[test]
    fn zero_variance_unequal_means_flags_infinite_t() {
        let a = [1.0, 1.0, 1.0];
        let b = [2.0, 2.0];
        let r = t_test_unpaired(&a, &b, TTestVariant::Pooled).unwrap();
        assert!(r.t_statistic.is_infinite() && r.t_statistic < 0.0);
        assert_eq!(r.p_value, 0.0);
    }

    #[test]
    fn small_groups_are_rejected() {
        assert!(matches!(
            t_test_unpaired(&[1.0], &[1.0, 2.0], TTestVariant::Pooled),
            Err(Error::TooFewObservations { .. })
        ));
        assert!(t_test_unpaired(&[1.0, f64::NAN], &[1.0, 2.0], TTestVariant::Pooled).is_err());
    }

    #[test]
    fn swapping_groups_negates_t() {
        let a = [2.1, 2.5, 2.3, 2.2];
        let b = [3.1, 2.9, 3.3, 3.0];
        let ab = t_test_unpaired(&a, &b, TTestVariant::Pooled).unwrap();
        let ba = t_test_unpaired(&b, &a, TTestVariant::Pooled).unwrap();
        assert_abs_diff_eq!(ab.t_statistic, -ba.t_statistic, epsilon = 1e-12);
        assert_abs_diff_eq!(ab.p_value, ba.p_value, epsilon = 1e-12);
    }

    fn table_2x2x3() -> FactorialTable {
        let mut obs = Vec::new();
        for (a, b, vals) in [
            ("a1", "b1", [3.1, 2.9, 3.0]),
            ("a1", "b2", [4.0, 4.2, 3.8]),
            ("a2", "b1", [5.0, 5.1, 4.9]),
            ("a2", "b2", [7.0, 7.3, 6.7]),
        ] {
            for v in vals {
                obs.push((a.to_string(), b.to_string(), v));
            }
        }
        FactorialTable::from_observations(obs).unwrap()
    }

    #[test]
    fn anova_matches_reference_decomposition() {
        let r = anova_two_way(&table_2x2x3()).unwrap();
        assert_relative_eq!(r.factor_a.sum_of_squares, 18.75, max_relative = 1e-10);
        assert_relative_eq!(r.factor_b.sum_of_squares, 6.75, max_relative = 1e-10);
        let inter = r.interaction.unwrap();
        assert_relative_eq!(inter.sum_of_squares, 0.75, max_relative = 1e-9);
        assert_abs_diff_eq!(r.residual.sum_of_squares, 0.3, epsilon = 1e-10);
        assert_eq!(
            (r.factor_a.df, r.factor_b.df, inter.df, r.residual.df),
            (1, 1, 1, 8)
        );
        assert_relative_eq!(r.factor_a.f_statistic.unwrap(), 500.0, max_relative = 1e-9);
        assert_relative_eq!(
            r.factor_a.p_value.unwrap(),
            1.6924559265113106e-8,
            max_relative = 1e-6
        );
        assert_relative_eq!(r.factor_b.f_statistic.unwrap(), 180.0, max_relative = 1e-9);
        assert_relative_eq!(
            r.factor_b.p_value.unwrap(),
            9.122544790013097e-7,
            max_relative = 1e-6
        );
        assert_relative_eq!(inter.f_statistic.unwrap(), 20.0, max_relative = 1e-9);
        assert_relative_eq!(
            inter.p_value.unwrap(),
            0.00207733771122687,
            max_relative = 1e-8
        );
        // SS additivity
        let sum = r.factor_a.sum_of_squares
            + r.factor_b.sum_of_squares
            + inter.sum_of_squares
            + r.residual.sum_of_squares;
        assert_relative_eq!(sum, r.ss_total, max_relative = 1e-12);
    }

    #[test]
    fn single_replicate_pools_interaction_into_residual() {
        let mut obs = Vec::new();
        for (i, row) in [[1.0, 2.0], [2.0, 4.0], [3.0, 6.5]].iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                obs.push((format!("a{i}"), format!("b{j}"), *v));
            }
        }
        let r = anova_two_way(&FactorialTable::from_observations(obs).unwrap()).unwrap();
        assert!(r.interaction.is_none());
        assert_relative_eq!(r.factor_a.sum_of_squares, 10.583333333333334, max_relative = 1e-10);
        assert_relative_eq!(r.factor_b.sum_of_squares, 7.041666666666668, max_relative = 1e-10);
        assert_relative_eq!(r.residual.sum_of_squares, 1.583333333333334, max_relative = 1e-9);
        assert_eq!(r.residual.df, 2);
        assert_relative_eq!(
            r.factor_a.f_statistic.unwrap(),
            6.684210526315788,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            r.factor_a.p_value.unwrap(),
            0.13013698630136988,
            max_relative = 1e-8
        );
        assert_relative_eq!(
            r.factor_b.p_value.unwrap(),
            0.09643753908600938,
            max_relative = 1e-8
        );
    }

    #[test]
    fn constant_table_flags_f_undefined() {
        let obs: Vec<(String, String, f64)> = ["a1", "a2"]
            .iter()
            .flat_map(|a| {
                ["b1", "b2"].iter().flat_map(move |b| {
                    (0..3).map(move |_| (a.to_string(), b.to_string(), 5.0))
                })
            })
            .collect();
        let r = anova_two_way(&FactorialTable::from_observations(obs).unwrap()).unwrap();
        assert_eq!(r.factor_a.sum_of_squares, 0.0);
        assert!(r.factor_a.f_statistic.is_none());
        assert!(r.factor_a.p_value.is_none());
        assert_eq!(r.ss_total, 0.0);
    }

    #[test]
    fn unbalanced_tables_are_rejected() {
        let obs = vec![
            ("a1".to_string(), "b1".to_string(), 1.0),
            ("a1".to_string(), "b2".to_string(), 2.0),
            ("a2".to_string(), "b1".to_string(), 3.0),
            ("a2".to_string(), "b2".to_string(), 4.0),
            ("a2".to_string(), "b2".to_string(), 5.0),
        ];
        assert!(matches!(
            anova_two_way(&FactorialTable::from_observations(obs).unwrap()),
            Err(Error::Unbalanced(_))
        ));
        // missing cell is caught at construction
        let obs = vec![
            ("a1".to_string(), "b1".to_string(), 1.0),
            ("a2".to_string(), "b2".to_string(), 4.0),
        ];
        assert!(matches!(
            FactorialTable::from_observations(obs),
            Err(Error::Unbalanced(_))
        ));
    }

    #[test]
    fn pearson_known_values() {
        assert_abs_diff_eq!(
            pearson_r(&[1.0, 2.0, 3.0, 4.0], &[1.0, 2.0, 3.0, 4.0]).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        let y: Vec<f64> = [1.0, 2.0, 3.0, 4.0].iter().map(|x| -2.0 * x + 7.0).collect();
        assert_abs_diff_eq!(
            pearson_r(&[1.0, 2.0, 3.0, 4.0], &y).unwrap(),
            -1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            pearson_r(&[1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0]).unwrap(),
            0.8,
            epsilon = 1e-12
        );
    }

    #[test]
    fn pearson_domain_errors() {
        assert!(matches!(
            pearson_r(&[1.0, 2.0, 3.0], &[5.0, 5.0, 5.0]),
            Err(Error::ZeroVariance("y"))
        ));
        assert!(matches!(
            pearson_r(&[1.0, 2.0], &[1.0, 2.0]),
            Err(Error::TooFewObservations { .. })
        ));
        assert!(pearson_r(&[1.0, 2.0, 3.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn tail_probability_reference_values() {
        let p = tail_probability(
            0.0,
            TailDistribution::StudentT { df: 7.0 },
            Sidedness::Two,
        )
        .unwrap();
        assert_eq!(p, 1.0);
        let p = tail_probability(
            1.812,
            TailDistribution::StudentT { df: 10.0 },
            Sidedness::One,
        )
        .unwrap();
        assert_abs_diff_eq!(p, 0.05, epsilon = 5e-4);
        assert_abs_diff_eq!(p, 0.050037631032923614, epsilon = 1e-10);
        let p = tail_probability(
            2.5,
            TailDistribution::StudentT { df: 38.0 },
            Sidedness::Two,
        )
        .unwrap();
        assert_relative_eq!(p, 0.016853477721399137, max_relative = 1e-9);
        let p = tail_probability(
            1.0,
            TailDistribution::FisherF { df1: 9.0, df2: 9.0 },
            Sidedness::One,
        )
        .unwrap();
        assert_abs_diff_eq!(p, 0.5, epsilon = 1e-9);
        let p = tail_probability(
            9.5,
            TailDistribution::FisherF { df1: 1.0, df2: 80.0 },
            Sidedness::One,
        )
        .unwrap();
        assert_relative_eq!(p, 0.0028182457953616273, max_relative = 1e-8);
    }

    #[test]
    fn two_sided_doubles_one_sided_for_positive_t() {
        for t in [0.3, 1.0, 2.4, 5.0] {
            let one = tail_probability(
                t,
                TailDistribution::StudentT { df: 12.0 },
                Sidedness::One,
            )
            .unwrap();
            let two = tail_probability(
                t,
                TailDistribution::StudentT { df: 12.0 },
                Sidedness::Two,
            )
            .unwrap();
            assert_abs_diff_eq!(two, 2.0 * one, epsilon = 1e-12);
        }
    }

    #[test]
    fn tail_probability_is_monotone_in_the_statistic() {
        let mut last = 1.0;
        for i in 0..60 {
            let t = i as f64 * 0.25;
            let p = tail_probability(
                t,
                TailDistribution::StudentT { df: 38.0 },
                Sidedness::Two,
            )
            .unwrap();
            assert!(p <= last + 1e-15, "p not nonincreasing at t={t}");
            last = p;
        }
    }

    #[test]
    fn tail_probability_rejects_bad_arguments() {
        assert!(tail_probability(
            1.0,
            TailDistribution::StudentT { df: 0.0 },
            Sidedness::Two
        )
        .is_err());
        assert!(tail_probability(
            1.0,
            TailDistribution::FisherF { df1: -1.0, df2: 5.0 },
            Sidedness::One
        )
        .is_err());
        assert!(tail_probability(
            f64::NAN,
            TailDistribution::StudentT { df: 5.0 },
            Sidedness::Two
        )
        .is_err());
        assert!(tail_probability(
            f64::INFINITY,
            TailDistribution::StudentT { df: 5.0 },
            Sidedness::Two
        )
        .is_err());
    }
}
