//! Executable instances built from config entries.

use crate::config::InstanceConfig;
use hilbert_forge::funcspace::{KernelParams, SequenceFamily, TestFunction};
use hilbert_forge::inequalities::{
    check_superadditivity, verify_hilbert_discrete, verify_hilbert_integral,
    verify_lemma_offset_discrete, verify_sum_discrete, verify_sum_integral,
    verify_weighted_integral, InequalityId, SumDiscreteInstance, SumIntegralInstance,
    VerificationReport, WeightVariant,
};
use hilbert_forge::specialfn::HolderPair;
use hilbert_forge::Budget;

/// A fully resolved, runnable verification instance.
pub struct PlannedInstance {
    pub runner: Runner,
    pub expect_inadmissible: bool,
    pub tol: f64,
}

pub enum Runner {
    HilbertIntegral { f: TestFunction, g: TestFunction, pair: HolderPair },
    HilbertDiscrete { a: SequenceFamily, b: SequenceFamily, pair: HolderPair },
    Lemma22 { c: SequenceFamily, d: SequenceFamily, pair: HolderPair },
    Weighted {
        f: TestFunction,
        g: TestFunction,
        pair: HolderPair,
        params: KernelParams,
        variant: WeightVariant,
    },
    SumDiscrete(SumDiscreteInstance),
    SumIntegral(SumIntegralInstance),
    Superadditivity { a: Vec<f64>, b: Vec<f64>, alphas: Vec<f64> },
}

impl Runner {
    pub fn run(&self, tol: f64, budget: &Budget) -> hilbert_forge::Result<VerificationReport> {
        match self {
            Runner::HilbertIntegral { f, g, pair } => {
                verify_hilbert_integral(f, g, pair, tol, budget)
            }
            Runner::HilbertDiscrete { a, b, pair } => {
                verify_hilbert_discrete(a, b, pair, tol, budget)
            }
            Runner::Lemma22 { c, d, pair } => {
                verify_lemma_offset_discrete(c, d, pair, tol, budget)
            }
            Runner::Weighted { f, g, pair, params, variant } => {
                verify_weighted_integral(f, g, pair, params, *variant, tol, budget)
            }
            Runner::SumDiscrete(inst) => verify_sum_discrete(inst, tol, budget),
            Runner::SumIntegral(inst) => verify_sum_integral(inst, tol, budget),
            Runner::Superadditivity { a, b, alphas } => check_superadditivity(a, b, alphas),
        }
    }
}

fn missing(entry: &InstanceConfig, field: &str) -> String {
    format!("instance '{}' is missing field '{field}'", entry.inequality)
}

/// Resolves one config entry into a runnable instance.
pub fn plan_instance(entry: &InstanceConfig, suite_tol: f64) -> Result<PlannedInstance, String> {
    let id = InequalityId::parse(&entry.inequality).map_err(|e| e.to_string())?;
    let tol = entry.tol.unwrap_or(suite_tol);
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(tol > 0.0) {
        return Err(format!("tolerance must be positive, got {tol}"));
    }

    let pair = || -> Result<HolderPair, String> {
        let p = entry.p.ok_or_else(|| missing(entry, "p"))?;
        HolderPair::new(p).map_err(|e| e.to_string())
    };
    let function = |slot: &Option<crate::config::FunctionConfig>, name: &str| {
        slot.as_ref().ok_or_else(|| missing(entry, name))?.build()
    };
    let sequence = |slot: &Option<crate::config::SequenceConfig>, name: &str| {
        slot.as_ref().ok_or_else(|| missing(entry, name))?.build()
    };
    let kernel = |pair: &HolderPair| -> Result<KernelParams, String> {
        let lambda = entry.lambda.ok_or_else(|| missing(entry, "lambda"))?;
        let gamma = entry.gamma.unwrap_or(0.0);
        let n = entry.n.unwrap_or(0);
        KernelParams::new(lambda, gamma, n, pair).map_err(|e| e.to_string())
    };

    let runner = match id {
        InequalityId::HilbertIntegral => Runner::HilbertIntegral {
            f: function(&entry.f, "f")?,
            g: function(&entry.g, "g")?,
            pair: pair()?,
        },
        InequalityId::HilbertDiscrete => Runner::HilbertDiscrete {
            a: sequence(&entry.a, "a")?,
            b: sequence(&entry.b, "b")?,
            pair: pair()?,
        },
        InequalityId::Lemma22 => Runner::Lemma22 {
            c: sequence(&entry.c, "c")?,
            d: sequence(&entry.d, "d")?,
            pair: pair()?,
        },
        InequalityId::Lemma23 | InequalityId::Lemma24 => {
            let pair = pair()?;
            let variant = if id == InequalityId::Lemma23 {
                WeightVariant::C
            } else {
                WeightVariant::CPrime
            };
            Runner::Weighted {
                f: function(&entry.f, "f")?,
                g: function(&entry.g, "g")?,
                params: kernel(&pair)?,
                pair,
                variant,
            }
        }
        InequalityId::Thm21 => {
            let pair = pair()?;
            let inst = SumDiscreteInstance::new(
                sequence(&entry.a, "a")?,
                sequence(&entry.b, "b")?,
                sequence(&entry.c, "c")?,
                sequence(&entry.d, "d")?,
                pair,
                entry.k.ok_or_else(|| missing(entry, "k"))?,
            )
            .map_err(|e| e.to_string())?;
            Runner::SumDiscrete(inst)
        }
        InequalityId::Thm22 => {
            let pair = pair()?;
            let inst = SumIntegralInstance::new(
                function(&entry.f, "f")?,
                function(&entry.g, "g")?,
                pair,
                kernel(&pair)?,
                entry.m.ok_or_else(|| missing(entry, "m"))?,
            )
            .map_err(|e| e.to_string())?;
            Runner::SumIntegral(inst)
        }
        InequalityId::Lemma21 => Runner::Superadditivity {
            a: entry.a_list.clone().ok_or_else(|| missing(entry, "a_list"))?,
            b: entry.b_list.clone().ok_or_else(|| missing(entry, "b_list"))?,
            alphas: entry.alphas.clone().ok_or_else(|| missing(entry, "alphas"))?,
        },
    };

    Ok(PlannedInstance { runner, expect_inadmissible: entry.expect_inadmissible, tol })
}
