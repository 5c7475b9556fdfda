//! JSON-ready report documents.
//!
//! Every numeric field that carries game data is serialized as an exact
//! rational string (`p/q` or an integer literal), never as a float, and all
//! collections are emitted in deterministic order, so identical analyses
//! produce byte-identical JSON.

use serde::Serialize;

use crate::ce::CeReport;
use crate::dual::{DeviationProfile, DualGainTable};
use crate::game::{CorrelatedStrategy, Game, MixedProfile, MixedStrategy};
use crate::nash::{AbcReport, NashReport};
use crate::rational::{format_rational, Rational};
use crate::reduction::{Classification, ReducedGame, ReductionTrace};

fn s(r: &Rational) -> String {
    format_rational(r)
}

#[derive(Debug, Clone, Serialize)]
pub struct GameDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub players: usize,
    pub actions: Vec<usize>,
    pub labels: Vec<Vec<String>>,
    /// Profile-major rows, one rational string per player.
    pub payoffs: Vec<Vec<String>>,
}

impl GameDoc {
    pub fn new(game: &Game) -> GameDoc {
        GameDoc {
            name: game.name().map(String::from),
            players: game.num_players(),
            actions: game.action_counts(),
            labels: (0..game.num_players())
                .map(|i| game.labels(i).to_vec())
                .collect(),
            payoffs: (0..game.num_profiles())
                .map(|flat| game.payoff_row(flat).iter().map(s).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileDoc {
    /// One label per player.
    pub strategies: Vec<String>,
}

fn profile_doc(game: &Game, flat: usize) -> ProfileDoc {
    let profile = game.profile_at(flat);
    ProfileDoc {
        strategies: profile
            .0
            .iter()
            .enumerate()
            .map(|(i, &c)| game.label(i, c).to_string())
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MixedStrategyDoc {
    /// Weight per strategy, aligned with the player's label list.
    pub weights: Vec<String>,
}

fn mixed_doc(m: &MixedStrategy) -> MixedStrategyDoc {
    MixedStrategyDoc {
        weights: m.weights().iter().map(s).collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MixedProfileDoc {
    pub strategies: Vec<MixedStrategyDoc>,
}

pub fn mixed_profile_doc(sigma: &MixedProfile) -> MixedProfileDoc {
    MixedProfileDoc {
        strategies: sigma.strategies().iter().map(mixed_doc).collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorrelatedDoc {
    /// Weight per profile in profile order.
    pub weights: Vec<String>,
}

pub fn correlated_doc(mu: &CorrelatedStrategy) -> CorrelatedDoc {
    CorrelatedDoc {
        weights: mu.weights().iter().map(s).collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct JeopardyEdgeDoc {
    pub player: usize,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CeReportDoc {
    pub elementary: bool,
    pub tight: bool,
    pub pretight: bool,
    pub dimension: i64,
    /// Coherent strategy labels per player.
    pub coherent: Vec<Vec<String>>,
    pub zero_profiles: Vec<ProfileDoc>,
    pub jeopardy: Vec<JeopardyEdgeDoc>,
    pub witness_ce: CorrelatedDoc,
}

pub fn ce_report_doc(game: &Game, report: &CeReport) -> CeReportDoc {
    CeReportDoc {
        elementary: report.is_elementary,
        tight: report.is_tight,
        pretight: report.is_pretight,
        dimension: report.dimension,
        coherent: report
            .coherent
            .iter()
            .enumerate()
            .map(|(i, set)| set.iter().map(|&c| game.label(i, c).to_string()).collect())
            .collect(),
        zero_profiles: report
            .zero_profiles
            .iter()
            .map(|&flat| profile_doc(game, flat))
            .collect(),
        jeopardy: report
            .jeopardy
            .iter()
            .enumerate()
            .flat_map(|(i, edges)| {
                edges.iter().map(move |&(from, to)| (i, from, to))
            })
            .map(|(i, from, to)| JeopardyEdgeDoc {
                player: i + 1,
                from: game.label(i, from).to_string(),
                to: game.label(i, to).to_string(),
            })
            .collect(),
        witness_ce: correlated_doc(&report.witness_ce),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PlanEntryDoc {
    pub from: String,
    /// Image weights aligned with the player's label list.
    pub to_weights: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeviationProfileDoc {
    /// Per player, one entry per recommended strategy.
    pub plans: Vec<Vec<PlanEntryDoc>>,
}

pub fn deviation_profile_doc(game: &Game, alpha: &DeviationProfile) -> DeviationProfileDoc {
    DeviationProfileDoc {
        plans: (0..game.num_players())
            .map(|i| {
                (0..game.num_actions(i))
                    .map(|from| PlanEntryDoc {
                        from: game.label(i, from).to_string(),
                        to_weights: alpha.plan(i).image(from).weights().iter().map(s).collect(),
                    })
                    .collect()
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GainRowDoc {
    pub profile: ProfileDoc,
    pub per_player: Vec<String>,
    pub total: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DualReportDoc {
    pub mode: String,
    pub deviation_profile: DeviationProfileDoc,
    pub gains: Vec<GainRowDoc>,
    pub is_dual_vector: bool,
    /// Profiles with negative total gain, when not a dual vector.
    pub violations: Vec<ProfileDoc>,
    /// Strategies removed by the redundancy constructor, when applicable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub removed: Option<Vec<JeopardyEdgeDoc>>,
}

pub fn dual_report_doc(
    game: &Game,
    mode: &str,
    alpha: &DeviationProfile,
    table: &DualGainTable,
    violations: &[usize],
    removed: Option<&[(usize, usize)]>,
) -> DualReportDoc {
    DualReportDoc {
        mode: mode.to_string(),
        deviation_profile: deviation_profile_doc(game, alpha),
        gains: (0..game.num_profiles())
            .map(|flat| GainRowDoc {
                profile: profile_doc(game, flat),
                per_player: table.per_player[flat].iter().map(s).collect(),
                total: s(&table.total[flat]),
            })
            .collect(),
        is_dual_vector: violations.is_empty(),
        violations: violations.iter().map(|&flat| profile_doc(game, flat)).collect(),
        removed: removed.map(|pairs| {
            pairs
                .iter()
                .map(|&(i, strat)| JeopardyEdgeDoc {
                    player: i + 1,
                    from: game.label(i, strat).to_string(),
                    to: String::new(),
                })
                .collect()
        }),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationDoc {
    pub player: usize,
    pub strategy: String,
    /// `eliminated`, `kept`, or `grouped:<reduced action label>`.
    pub fate: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReducedActionDoc {
    pub label: String,
    /// Stationary weights over the base game's strategies.
    pub stationary: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReduceReportDoc {
    pub mode: String,
    pub deviation_profile: DeviationProfileDoc,
    pub classification: Vec<ClassificationDoc>,
    pub reduced_actions: Vec<Vec<ReducedActionDoc>>,
    pub reduced_game: GameDoc,
}

pub fn reduce_report_doc(mode: &str, alpha: &DeviationProfile, reduced: &ReducedGame) -> ReduceReportDoc {
    let base = &reduced.base;
    ReduceReportDoc {
        mode: mode.to_string(),
        deviation_profile: deviation_profile_doc(base, alpha),
        classification: classification_docs(reduced),
        reduced_actions: reduced_action_docs(reduced),
        reduced_game: GameDoc::new(&reduced.game),
    }
}

fn classification_docs(reduced: &ReducedGame) -> Vec<ClassificationDoc> {
    let base = &reduced.base;
    let mut out = Vec::new();
    for i in 0..base.num_players() {
        for strat in 0..base.num_actions(i) {
            let fate = match reduced.classification[i][strat] {
                Classification::Eliminated => "eliminated".to_string(),
                Classification::Kept => "kept".to_string(),
                Classification::Grouped(class) => {
                    format!("grouped:{}", reduced.game.label(i, class))
                }
            };
            out.push(ClassificationDoc {
                player: i + 1,
                strategy: base.label(i, strat).to_string(),
                fate,
            });
        }
    }
    out
}

fn reduced_action_docs(reduced: &ReducedGame) -> Vec<Vec<ReducedActionDoc>> {
    (0..reduced.game.num_players())
        .map(|i| {
            reduced.reduced_actions[i]
                .iter()
                .enumerate()
                .map(|(a, stationary)| ReducedActionDoc {
                    label: reduced.game.label(i, a).to_string(),
                    stationary: stationary.weights().iter().map(s).collect(),
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct StageDoc {
    pub stage: usize,
    pub deviation_profile: DeviationProfileDoc,
    pub classification: Vec<ClassificationDoc>,
    pub reduced_actions: Vec<Vec<ReducedActionDoc>>,
    pub reduced_game: GameDoc,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceDoc {
    pub policy: String,
    pub stages: Vec<StageDoc>,
    pub terminal: GameDoc,
    pub terminal_elementary: bool,
}

pub fn trace_doc(policy: &str, trace: &ReductionTrace) -> TraceDoc {
    TraceDoc {
        policy: policy.to_string(),
        stages: trace
            .stages
            .iter()
            .enumerate()
            .map(|(idx, stage)| StageDoc {
                stage: idx + 1,
                deviation_profile: deviation_profile_doc(&stage.reduced.base, &stage.alpha),
                classification: classification_docs(&stage.reduced),
                reduced_actions: reduced_action_docs(&stage.reduced),
                reduced_game: GameDoc::new(&stage.reduced.game),
            })
            .collect(),
        terminal: GameDoc::new(&trace.terminal),
        terminal_elementary: trace.terminal_elementary,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationDoc {
    pub player: usize,
    pub from: String,
    pub to: String,
    pub gain: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertifyDoc {
    pub correlated_equilibrium: bool,
    pub violations: Vec<ViolationDoc>,
    /// Strict-CE verdict; absent when the distribution is not a CE.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict: Option<bool>,
    /// Whether the distribution factors as a product of its marginals.
    pub product_form: bool,
    /// Nash verdict for the product form, when it exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nash: Option<bool>,
    /// Quasi-strictness, when the product form is Nash.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quasi_strict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<MixedProfileDoc>,
    pub mu: CorrelatedDoc,
}

#[derive(Debug, Clone, Serialize)]
pub struct NashReportDoc {
    pub method: String,
    pub exact: bool,
    pub degenerate: bool,
    pub equilibria: Vec<MixedProfileDoc>,
}

pub fn nash_report_doc(report: &NashReport) -> NashReportDoc {
    NashReportDoc {
        method: match report.method {
            crate::nash::NashMethod::PureEnumeration => "pure-enumeration".to_string(),
            crate::nash::NashMethod::SupportEnumeration => "support-enumeration".to_string(),
            crate::nash::NashMethod::BlockMixed => "block-mixed".to_string(),
        },
        exact: report.exact,
        degenerate: report.degenerate,
        equilibria: report.equilibria.iter().map(mixed_profile_doc).collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AbcDoc {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub degenerate: bool,
}

pub fn abc_doc(report: &AbcReport) -> AbcDoc {
    AbcDoc {
        a: report.a,
        b: report.b,
        c: report.c,
        degenerate: report.degenerate,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InfoDoc {
    pub game: GameDoc,
    pub ce: CeReportDoc,
    /// Present for two-player games within the size guard.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nash: Option<NashReportDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conditions: Option<AbcDoc>,
    /// Reasons why optional sections were skipped.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<String>,
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("report serialization");
    out.push('\n');
    out
}
