use crate::report::RunReport;
use clap::ValueEnum;
use paperfold::{catalanz, cfseries, gf2sign, Result, VerifyReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

pub const DEFAULT_SIZE: usize = 256;
pub const DEFAULT_ORDER: usize = 512;
pub const DEFAULT_SEED: u64 = 0;

/// Number of random sign vectors drawn by the `eps` suite.
pub const EPS_DRAWS: usize = 10;
const EPS_LEN: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Suite {
    All,
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    Thm5,
    Mdl,
    MlLm,
    Babab,
    CatalanLu,
    ExpProducts,
    LogConjecture,
    Eps,
    Dets,
    UniqueSearch,
    Lemma5,
    Orth,
    JacobiCf,
    ShiftedJacobi,
    Mod2Bridge,
    CatalanGfMod2,
}

/// Every suite run by `all`, in output order.
pub const ALL_SUITES: [Suite; 20] = [
    Suite::Thm1,
    Suite::Thm2,
    Suite::Thm3,
    Suite::Thm4,
    Suite::Thm5,
    Suite::Mdl,
    Suite::MlLm,
    Suite::Babab,
    Suite::CatalanLu,
    Suite::ExpProducts,
    Suite::LogConjecture,
    Suite::Eps,
    Suite::Dets,
    Suite::UniqueSearch,
    Suite::Lemma5,
    Suite::Orth,
    Suite::JacobiCf,
    Suite::ShiftedJacobi,
    Suite::Mod2Bridge,
    Suite::CatalanGfMod2,
];

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
            Suite::Thm3 => "thm3",
            Suite::Thm4 => "thm4",
            Suite::Thm5 => "thm5",
            Suite::Mdl => "mdl",
            Suite::MlLm => "ml-lm",
            Suite::Babab => "babab",
            Suite::CatalanLu => "catalan-lu",
            Suite::ExpProducts => "exp-products",
            Suite::LogConjecture => "log-conjecture",
            Suite::Eps => "eps",
            Suite::Dets => "dets",
            Suite::UniqueSearch => "unique-search",
            Suite::Lemma5 => "lemma5",
            Suite::Orth => "orth",
            Suite::JacobiCf => "jacobi-cf",
            Suite::ShiftedJacobi => "shifted-jacobi",
            Suite::Mod2Bridge => "mod2-bridge",
            Suite::CatalanGfMod2 => "catalan-gf-mod2",
        }
    }

    /// Whether the suite is parameterised by the series order rather than
    /// the matrix size.
    pub fn uses_order(self) -> bool {
        matches!(self, Suite::Thm1 | Suite::JacobiCf | Suite::CatalanGfMod2)
    }

    /// The size this suite runs at when the run is asked for size `n`:
    /// suites with cubic big-integer cost are capped.
    pub fn capped(self, n: usize) -> usize {
        let cap = match self {
            Suite::Thm4 | Suite::ExpProducts | Suite::LogConjecture => 48,
            Suite::CatalanLu | Suite::Orth | Suite::Mod2Bridge => 64,
            Suite::Dets | Suite::ShiftedJacobi => 32,
            Suite::UniqueSearch => 8,
            Suite::Lemma5 => 4,
            _ => usize::MAX,
        };
        n.min(cap)
    }

    /// Runs the suite at size `n` (or order `n` for series suites).
    pub fn run(self, n: usize, seed: u64) -> Result<VerifyReport> {
        match self {
            Suite::All => unreachable!("`all` is expanded by the caller"),
            Suite::Thm1 => cfseries::verify_thm1(n),
            Suite::Thm2 => gf2sign::verify_thm2(n),
            Suite::Thm3 => gf2sign::verify_thm3(n),
            Suite::Thm4 => cfseries::verify_thm4(n),
            Suite::Thm5 => gf2sign::verify_thm5(n),
            Suite::Mdl => gf2sign::verify_prop_mdl(n),
            Suite::MlLm => gf2sign::verify_prop_ml_lm(n),
            Suite::Babab => gf2sign::verify_babab(n),
            Suite::CatalanLu => catalanz::verify_catalan_lu(n),
            Suite::ExpProducts => catalanz::verify_exp_products(n),
            Suite::LogConjecture => catalanz::check_log_conjecture(n),
            Suite::Eps => verify_random_eps(n, seed),
            Suite::Dets => cfseries::verify_det_identities(n),
            Suite::UniqueSearch => cfseries::verify_uniqueness_search(n),
            Suite::Lemma5 => cfseries::verify_lemma5(n),
            Suite::Orth => cfseries::verify_orth_polys(n),
            Suite::JacobiCf => cfseries::verify_jacobi_limit(n),
            Suite::ShiftedJacobi => cfseries::verify_shifted_stieltjes(n),
            Suite::Mod2Bridge => catalanz::verify_mod2_bridge(n),
            Suite::CatalanGfMod2 => catalanz::verify_catalan_gf_mod2(n),
        }
    }
}

/// `EPS_DRAWS` sign vectors from ChaCha8 seeded with `seed`.
pub fn random_eps(seed: u64) -> Vec<Vec<i8>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..EPS_DRAWS)
        .map(|_| {
            (0..EPS_LEN)
                .map(|_| if rng.random::<bool>() { 1 } else { -1 })
                .collect()
        })
        .collect()
}

fn verify_random_eps(n: usize, seed: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport::new("eps", n);
    for (k, eps) in random_eps(seed).iter().enumerate() {
        let mut sub = gf2sign::verify_eps(eps, n)?;
        sub.suite = format!("draw{k}");
        report.absorb(sub);
    }
    Ok(report)
}

/// Settings of a `verify` invocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyArgs {
    pub suite: Suite,
    pub size: Option<usize>,
    pub order: Option<usize>,
    pub seed: u64,
    pub strict: bool,
}

/// Runs the requested suite, or every suite for `all`. An explicit size is
/// used as given by a single suite and capped per suite by `all`.
///
/// Suites run on separate threads; results are collected in the fixed
/// suite order, and the first error in that order is returned.
pub fn verify(args: VerifyArgs) -> Result<RunReport> {
    let start = Instant::now();
    let size = args.size.unwrap_or(DEFAULT_SIZE);
    let order = args.order.unwrap_or(DEFAULT_ORDER);
    let plan: Vec<(Suite, usize)> = if args.suite == Suite::All {
        ALL_SUITES
            .iter()
            .map(|&s| (s, if s.uses_order() { order } else { s.capped(size) }))
            .collect()
    } else if args.suite.uses_order() {
        vec![(args.suite, order)]
    } else {
        let n = args.size.unwrap_or_else(|| args.suite.capped(DEFAULT_SIZE));
        vec![(args.suite, n)]
    };
    let seed = args.seed;
    let results: Vec<Result<VerifyReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = plan
            .iter()
            .map(|&(suite, n)| scope.spawn(move || suite.run(n, seed)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    });

    let single = args.suite != Suite::All;
    let (report_size, report_order) = if single {
        let (s, n) = plan[0];
        if s.uses_order() {
            (n, Some(n))
        } else {
            (n, None)
        }
    } else {
        (size, Some(order))
    };
    let uses_seed = matches!(args.suite, Suite::All | Suite::Eps);
    let mut run = RunReport::new(
        args.suite.name(),
        report_size,
        report_order,
        uses_seed.then_some(seed),
    );
    for r in results {
        run.add(r?, args.strict, !single);
    }
    run.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(run)
}
