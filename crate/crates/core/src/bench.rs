//! Seeded random benchmarks comparing the strategies.

use std::fmt::Write as _;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{GroupElement, Homomorphism, SolutionSet};
use crate::random::{random_hom, random_prime_power_group, random_rhs};
use crate::strategy::{solutions_agree, solve, Strategy};

pub const CSV_HEADER: &str = "strategy,instances,solvable,inconsistent,agree_oracle,total_ms,median_ms";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchProfile {
    pub seed: u64,
    pub count: usize,
    pub primes: Vec<u64>,
    pub max_rank: usize,
    pub max_exp: u32,
    pub strategies: Vec<Strategy>,
}

impl BenchProfile {
    pub fn new(seed: u64, count: usize, primes: Vec<u64>, max_rank: usize, max_exp: u32) -> Self {
        BenchProfile {
            seed,
            count,
            primes,
            max_rank,
            max_exp,
            strategies: vec![
                Strategy::Snf,
                Strategy::SnfHybrid,
                Strategy::Modular,
                Strategy::Block,
                Strategy::Hensel,
                Strategy::Auto,
                Strategy::Oracle,
            ],
        }
    }

    /// The instance sequence; depends only on the seed and the group shape.
    pub fn instances(&self) -> Vec<(Homomorphism, GroupElement)> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.count)
            .map(|_| {
                let g = random_prime_power_group(&mut rng, &self.primes, self.max_rank, self.max_exp);
                let h = random_prime_power_group(&mut rng, &self.primes, self.max_rank, self.max_exp);
                let hom = random_hom(&mut rng, &g, &h);
                let b = random_rhs(&mut rng, &hom);
                (hom, b)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub strategy: Strategy,
    pub instances: usize,
    pub solvable: usize,
    pub inconsistent: usize,
    pub agree_oracle: usize,
    pub total_ms: f64,
    pub median_ms: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub instances: usize,
    /// Instances on which every applicable strategy gave the same verdict.
    pub unanimous: usize,
    /// Instances small enough for the oracle.
    pub oracle_checked: usize,
}

fn median(v: &mut [f64]) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    }
}

pub fn run_bench(profile: &BenchProfile) -> Result<BenchReport> {
    let instances = profile.instances();
    let oracle: Vec<Option<SolutionSet>> = instances
        .iter()
        .map(|(hom, b)| match solve(hom, b, Strategy::Oracle) {
            Ok(s) => Ok(Some(s)),
            Err(Error::Inapplicable(_)) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    let mut verdicts: Vec<Vec<bool>> = vec![Vec::new(); instances.len()];
    let mut rows = Vec::with_capacity(profile.strategies.len());
    if instances.is_empty() {
        return Ok(BenchReport { rows, instances: 0, unanimous: 0, oracle_checked: 0 });
    }

    for &strategy in &profile.strategies {
        let mut row = BenchRow {
            strategy,
            instances: 0,
            solvable: 0,
            inconsistent: 0,
            agree_oracle: 0,
            total_ms: 0.0,
            median_ms: 0.0,
        };
        let mut times = Vec::with_capacity(instances.len());
        for (k, (hom, b)) in instances.iter().enumerate() {
            let start = Instant::now();
            let sol = match solve(hom, b, strategy) {
                Ok(s) => s,
                Err(Error::Inapplicable(_)) => continue,
                Err(e) => return Err(e),
            };
            times.push(start.elapsed().as_secs_f64() * 1000.0);
            row.instances += 1;
            if sol.is_solvable() {
                row.solvable += 1;
            } else {
                row.inconsistent += 1;
            }
            verdicts[k].push(sol.is_solvable());
            if let Some(o) = &oracle[k] {
                if solutions_agree(hom, b, o, &sol)? {
                    row.agree_oracle += 1;
                }
            }
        }
        row.total_ms = times.iter().fold(0.0, |a, t| a + t);
        row.median_ms = median(&mut times);
        rows.push(row);
    }
    let unanimous = verdicts.iter().filter(|v| v.windows(2).all(|w| w[0] == w[1])).count();
    let oracle_checked = oracle.iter().filter(|o| o.is_some()).count();
    Ok(BenchReport { rows, instances: instances.len(), unanimous, oracle_checked })
}

impl BenchReport {
    pub fn all_agree(&self) -> bool {
        self.unanimous == self.instances
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from(CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            writeln!(
                s,
                "{},{},{},{},{},{:.3},{:.3}",
                r.strategy, r.instances, r.solvable, r.inconsistent, r.agree_oracle, r.total_ms, r.median_ms
            )
            .unwrap();
        }
        s
    }

    pub fn to_table(&self) -> String {
        let header = ["strategy", "instances", "solvable", "inconsistent", "agree_oracle", "total_ms", "median_ms"];
        let cells: Vec<[String; 7]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.strategy.to_string(),
                    r.instances.to_string(),
                    r.solvable.to_string(),
                    r.inconsistent.to_string(),
                    r.agree_oracle.to_string(),
                    format!("{:.3}", r.total_ms),
                    format!("{:.3}", r.median_ms),
                ]
            })
            .collect();
        let widths: Vec<usize> =
            (0..7).map(|c| cells.iter().map(|row| row[c].len()).chain([header[c].len()]).max().unwrap()).collect();
        let mut s = String::new();
        let line = |s: &mut String, row: &[&str]| {
            let parts: Vec<String> = row
                .iter()
                .enumerate()
                .map(
                    |(c, v)| if c == 0 { format!("{v:<w$}", w = widths[c]) } else { format!("{v:>w$}", w = widths[c]) },
                )
                .collect();
            writeln!(s, "{}", parts.join("  ").trim_end()).unwrap();
        };
        line(&mut s, &header);
        for row in &cells {
            line(&mut s, &row.iter().map(String::as_str).collect::<Vec<_>>());
        }
        writeln!(
            s,
            "verdicts unanimous on {}/{} instances; oracle checked {}",
            self.unanimous, self.instances, self.oracle_checked
        )
        .unwrap();
        s
    }
}

/// Drops the two timing columns, leaving what must be reproducible.
pub fn strip_timing(csv: &str) -> String {
    csv.lines().map(|l| l.rsplitn(3, ',').nth(2).unwrap_or(l)).collect::<Vec<_>>().join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_profile() {
        let r = run_bench(&BenchProfile::new(1, 0, vec![2], 2, 2)).unwrap();
        assert_eq!(r.instances, 0);
        assert_eq!(r.to_csv().trim_end(), CSV_HEADER);
    }

    #[test]
    fn small_run_is_unanimous_and_reproducible() {
        let profile = BenchProfile::new(5, 12, vec![2, 3], 3, 2);
        let a = run_bench(&profile).unwrap();
        let b = run_bench(&profile).unwrap();
        assert!(a.all_agree());
        assert_eq!(strip_timing(&a.to_csv()), strip_timing(&b.to_csv()));
        for row in &a.rows {
            assert_eq!(row.instances, row.solvable + row.inconsistent);
        }
        let oracle = a.rows.iter().find(|r| r.strategy == Strategy::Oracle).unwrap();
        assert_eq!(oracle.instances, a.oracle_checked);
        assert!(a.to_table().contains("agree_oracle"));
    }

    #[test]
    fn timing_columns_stripped() {
        assert_eq!(strip_timing("a,1,2,3,4,5.0,6.0\nb,1,1,0,1,0.1,0.2"), "a,1,2,3,4\nb,1,1,0,1");
    }
}
