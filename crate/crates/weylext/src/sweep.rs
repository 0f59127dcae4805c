//! Verification jobs, a worker pool that runs them, and report rendering.

use crate::combinatorics::{partitions_of, Partition};
use crate::theorems::{
    digit_vs_modular, lemma_cases, thm21_cases, thm22_cases, verify_lemmas, verify_removal, verify_skewrep,
    verify_stability, verify_thm21, verify_thm22, verify_vanishing, Thm21Case, Thm22Mode, VerificationReport,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Thm21,
    Thm22,
    Lemmas,
    Vanishing,
    Removal,
    Skewrep,
    Stability,
    Digit,
}

impl Kind {
    pub const ALL: [Kind; 8] = [
        Kind::Thm21,
        Kind::Thm22,
        Kind::Lemmas,
        Kind::Vanishing,
        Kind::Removal,
        Kind::Skewrep,
        Kind::Stability,
        Kind::Digit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Thm21 => "thm21",
            Kind::Thm22 => "thm22",
            Kind::Lemmas => "lemmas",
            Kind::Vanishing => "vanishing",
            Kind::Removal => "removal",
            Kind::Skewrep => "skewrep",
            Kind::Stability => "stability",
            Kind::Digit => "digit",
        }
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Kind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| format!("unknown verification kind {s:?}"))
    }
}

/// One independent unit of verification work.
#[derive(Clone, Debug)]
pub enum Job {
    Thm21(Thm21Case, usize),
    Thm22(Partition),
    Lemmas(Partition),
    Vanishing(Partition, usize),
    Removal(Partition, Partition),
    Skewrep(Partition, usize, usize),
    Stability(Partition, Partition, usize, usize),
    Digit(Partition, u64),
}

impl Job {
    /// Canonical case string, unique across all jobs.
    pub fn key(&self) -> String {
        match self {
            Job::Thm21(c, i) => format!("thm21|{}|{}|{i}", c.lambda, c.mu),
            Job::Thm22(l) => format!("thm22|{l}"),
            Job::Lemmas(nu) => format!("lemmas|{nu}"),
            Job::Vanishing(l, i) => format!("vanishing|{l}|{i}"),
            Job::Removal(l, m) => format!("removal|{l}|{m}"),
            Job::Skewrep(l, t, i) => format!("skewrep|{l}|{t}|{i}"),
            Job::Stability(l, m, n, i) => format!("stability|{l}|{m}|{n}|{i}"),
            Job::Digit(l, p) => format!("digit|{l}|{p}"),
        }
    }

    pub fn run(&self) -> Vec<VerificationReport> {
        match self {
            Job::Thm21(c, i) => vec![verify_thm21(c, *i)],
            Job::Thm22(l) => vec![verify_thm22(l, Thm22Mode::Direct), verify_thm22(l, Thm22Mode::Dual)],
            Job::Lemmas(nu) => verify_lemmas(nu),
            Job::Vanishing(l, i) => vec![verify_vanishing(l, *i)],
            Job::Removal(l, m) => vec![verify_removal(l, m)],
            Job::Skewrep(l, t, i) => verify_skewrep(l, *t, *i),
            Job::Stability(l, m, n, i) => vec![verify_stability(l, m, *n, *i)],
            Job::Digit(l, p) => vec![digit_vs_modular(l, *p)],
        }
    }

    /// As [`Job::run`], with wall-clock time attached to each report.
    pub fn run_timed(&self) -> Vec<VerificationReport> {
        let start = Instant::now();
        let mut out = self.run();
        let ms = start.elapsed().as_millis() as u64;
        for r in out.iter_mut() {
            r.ms = Some(ms);
        }
        out
    }
}

fn partitions_upto(max_degree: usize, min_degree: usize) -> Vec<Partition> {
    (min_degree..=max_degree).flat_map(|d| partitions_of(d, d).into_iter().rev()).collect()
}

/// Deterministic pairs `(λ, μ)` of equal degree for the stability check.
pub fn stability_pairs(max_degree: usize, count: usize) -> Vec<(Partition, Partition)> {
    let mut all = Vec::new();
    for d in 2..=max_degree.min(4) {
        let ps: Vec<Partition> = partitions_of(d, d).into_iter().rev().collect();
        for a in &ps {
            for b in &ps {
                all.push((a.clone(), b.clone()));
            }
        }
    }
    if all.len() <= count {
        return all;
    }
    let step = all.len() as f64 / count as f64;
    (0..count).map(|i| all[(i as f64 * step) as usize].clone()).collect()
}

/// The job list for one kind of verification.
pub fn jobs(kind: Kind, max_degree: usize, max_i: usize) -> Vec<Job> {
    match kind {
        Kind::Thm21 => thm21_cases(max_degree).into_iter().map(|c| Job::Thm21(c, max_i)).collect(),
        Kind::Thm22 => thm22_cases(max_degree).into_iter().map(Job::Thm22).collect(),
        Kind::Lemmas => lemma_cases(max_degree, 3).into_iter().map(Job::Lemmas).collect(),
        Kind::Vanishing => partitions_upto(max_degree, 1).into_iter().map(|l| Job::Vanishing(l, max_i)).collect(),
        Kind::Removal => thm21_cases(max_degree).into_iter().map(|c| Job::Removal(c.lambda, c.mu)).collect(),
        Kind::Skewrep => partitions_upto(max_degree.min(5), 2)
            .into_iter()
            .flat_map(|l| (1..=2).map(move |t| Job::Skewrep(l.clone(), t, max_i.min(2))))
            .collect(),
        Kind::Stability => stability_pairs(max_degree, 20)
            .into_iter()
            .map(|(l, m)| {
                let n = l.len().max(m.len());
                Job::Stability(l, m, n, max_i)
            })
            .collect(),
        Kind::Digit => partitions_upto(max_degree, 1).into_iter().flat_map(|l| [2, 3].map(|p| Job::Digit(l.clone(), p))).collect(),
    }
}

/// Runs jobs on `workers` threads, one report group per job, in job order.
pub fn run_grouped(jobs: &[Job], workers: usize, timed: bool) -> Vec<Vec<VerificationReport>> {
    let run = |j: &Job| if timed { j.run_timed() } else { j.run() };
    if workers <= 1 {
        return jobs.iter().map(run).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool");
    pool.install(|| jobs.par_iter().map(run).collect())
}

/// Runs jobs on `workers` threads; the output order is the job order.
pub fn run_jobs(jobs: &[Job], workers: usize, timed: bool) -> Vec<VerificationReport> {
    run_grouped(jobs, workers, timed).into_iter().flatten().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

pub fn summarize(reports: &[VerificationReport]) -> Summary {
    let passed = reports.iter().filter(|r| r.pass).count();
    Summary { total: reports.len(), passed, failed: reports.len() - passed }
}

/// One JSON object per line.
pub fn to_json_lines(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&serde_json::to_string(r).expect("report serializes"));
        out.push('\n');
    }
    out
}

pub fn render_table(reports: &[VerificationReport]) -> String {
    let headers = ["kind", "case", "predicted", "computed", "status", "ms"];
    let rows: Vec<[String; 6]> = reports
        .iter()
        .map(|r| {
            [
                r.kind.clone(),
                r.case.clone(),
                r.predicted.clone(),
                r.computed.clone(),
                if r.pass { "pass".into() } else { "FAIL".into() },
                r.ms.map_or("-".into(), |m| m.to_string()),
            ]
        })
        .collect();
    let mut widths = headers.map(|h| h.len());
    for row in &rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: &[String], out: &mut String| {
        let parts: Vec<String> = cells.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&headers.map(String::from), &mut out);
    for row in &rows {
        line(row, &mut out);
    }
    let s = summarize(reports);
    let _ = writeln!(out, "{} passed, {} failed, {} total", s.passed, s.failed, s.total);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_round_trip() {
        for k in Kind::ALL {
            assert_eq!(k.name().parse::<Kind>().unwrap(), k);
        }
        assert!("thm23".parse::<Kind>().is_err());
    }

    #[test]
    fn keys_are_unique() {
        let mut keys: Vec<String> = Kind::ALL.iter().flat_map(|&k| jobs(k, 4, 2)).map(|j| j.key()).collect();
        let n = keys.len();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), n);
    }

    #[test]
    fn parallel_matches_serial() {
        let js = jobs(Kind::Thm21, 4, 2);
        assert_eq!(run_jobs(&js, 1, false), run_jobs(&js, 3, false));
    }

    #[test]
    fn stability_sample_size() {
        assert_eq!(stability_pairs(6, 20).len(), 20);
    }
}
