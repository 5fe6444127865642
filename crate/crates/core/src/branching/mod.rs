//! Branch-and-reduce search for terminal separation.

pub mod cases;
pub mod potential;

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::reductions::{reduce_exhaustively, Reduced, ReductionLog, Rule};
use crate::multigraph::VertexId;
use crate::termsep::{Side, TermSepInstance, TerminalSeparation, UndoLog};

type Labels = HashMap<VertexId, Side>;

pub use cases::{select_step, CaseTag, Step, Tag, TerminalKind, Violation};
pub use potential::{is_good_vector, BranchingVector, Gain, Potential, GOOD_TABLE};

#[derive(Clone, Debug)]
#[derive(Default)]
pub struct EngineConfig {
    /// Return an error on the first violation instead of branching plainly.
    pub abort_on_violation: bool,
    pub trace: bool,
    /// Give up after this many search nodes.
    pub node_limit: Option<u64>,
}


#[derive(Clone, Debug, Default)]
pub struct Stats {
    pub nodes: u64,
    pub leaves: u64,
    pub branches: u64,
    pub merges: u64,
    pub assignments: u64,
    pub fallbacks: u64,
    pub case00: u64,
    pub exhausted: u64,
    pub structure: u64,
    /// Children whose measure dropped less than the claimed vector allows.
    pub assertion_failures: u64,
    pub rules: BTreeMap<Rule, u64>,
    pub tags: BTreeMap<CaseTag, u64>,
}

impl Stats {
    pub fn violations(&self) -> u64 {
        self.case00 + self.exhausted + self.structure
    }

    fn absorb(&mut self, log: &ReductionLog) {
        for (r, c) in &log.counts {
            *self.rules.entry(*r).or_default() += c;
        }
    }
}

#[derive(Clone, Debug)]
pub struct TraceRecord {
    pub depth: usize,
    pub tag: Tag,
    pub claimed: Option<BranchingVector>,
    /// Realized gains of the children; `None` for a child that is a leaf.
    pub realized: Vec<Option<Gain>>,
    pub mu_before: f64,
    pub mu_after: Vec<f64>,
    pub violation: Option<Violation>,
}

/// One node after reduction.
struct Child {
    inst: TermSepInstance,
    outcome: Reduced,
}

#[derive(Debug, Default)]
pub struct Engine {
    pub config: EngineConfig,
    pub stats: Stats,
    pub trace: Vec<TraceRecord>,
}

impl Engine {
    pub fn new(config: EngineConfig) -> Self {
        Engine { config, ..Default::default() }
    }

    /// Decides the instance; on success the separation is integral, extends
    /// (A°, B°) and costs at most k.
    pub fn solve(&mut self, input: &TermSepInstance) -> Result<Option<TerminalSeparation>> {
        let mut inst = input.clone();
        inst.log = UndoLog::default();
        let child = self.reduce(inst)?;
        let found = self.explore(child, 0)?;
        let Some(labels) = found else { return Ok(None) };
        let sep = input.separation_from_labels(&labels)?;
        input.check_separation(&sep)?;
        let cost2 = sep.cost2(&input.graph)?;
        if !(sep.a.len() + sep.b.len() == input.graph.vertex_count() && sep.extends(&input.base) && cost2 as i64 <= 2 * input.k) {
            return Err(Error::InvalidSeparation("search returned an invalid separation".into()));
        }
        Ok(Some(sep))
    }

    fn reduce(&mut self, mut inst: TermSepInstance) -> Result<Child> {
        let mut log = ReductionLog::default();
        let outcome = reduce_exhaustively(&mut inst, &mut log)?;
        self.stats.absorb(&log);
        Ok(Child { inst, outcome })
    }

    fn child_of(&mut self, parent: &TermSepInstance, seed: &TerminalSeparation) -> Result<Child> {
        let mut inst = parent.clone();
        inst.base = seed.clone();
        self.reduce(inst)
    }

    fn explore(&mut self, child: Child, depth: usize) -> Result<Option<Labels>> {
        self.stats.nodes += 1;
        if let Some(limit) = self.config.node_limit {
            if self.stats.nodes > limit {
                return Err(Error::Guard(format!("node limit {limit} reached")));
            }
        }
        match child.outcome {
            Reduced::NoSolution => {
                self.stats.leaves += 1;
                Ok(None)
            }
            Reduced::Solved(sep) => {
                self.stats.leaves += 1;
                let mut inst = child.inst;
                inst.base = sep;
                Ok(Some(inst.lift_labels()?))
            }
            Reduced::Open => self.search(child.inst, depth),
        }
    }

    fn search(&mut self, inst: TermSepInstance, depth: usize) -> Result<Option<Labels>> {
        let before = Potential::of(&inst);
        let step = select_step(&inst)?;
        match step {
            Step::Branch { seeds, claimed, tag } => {
                self.stats.branches += 1;
                *self.stats.tags.entry(tag.case).or_default() += 1;
                let children = [self.child_of(&inst, &seeds[0])?, self.child_of(&inst, &seeds[1])?];
                let mut realized = Vec::new();
                let mut mu_after = Vec::new();
                for (i, c) in children.iter().enumerate() {
                    if c.outcome != Reduced::Open {
                        realized.push(None);
                        mu_after.push(f64::NAN);
                        continue;
                    }
                    let after = Potential::of(&c.inst);
                    let gain = before.gain_to(&after);
                    let claim = claimed.0[i];
                    if before.mu() - after.mu() < claim.delta() - 1e-9 && !gain.dominates(&claim) {
                        self.stats.assertion_failures += 1;
                    }
                    realized.push(Some(gain));
                    mu_after.push(after.mu());
                }
                self.record(depth, tag, Some(claimed), realized, before, mu_after, None);
                for c in children {
                    if let Some(sep) = self.explore(c, depth + 1)? {
                        return Ok(Some(sep));
                    }
                }
                Ok(None)
            }
            Step::Merge { set, tag } => {
                self.stats.merges += 1;
                *self.stats.tags.entry(tag.case).or_default() += 1;
                let mut next = inst;
                next.merge(&set)?;
                self.single(next, depth, tag, before)
            }
            Step::Assign { seed, tag } => {
                self.stats.assignments += 1;
                *self.stats.tags.entry(tag.case).or_default() += 1;
                let mut next = inst;
                next.base = seed;
                self.single(next, depth, tag, before)
            }
            Step::Fallback { seeds, violation } => {
                if self.config.abort_on_violation {
                    return Err(Error::Precondition(format!("case analysis violated: {violation}")));
                }
                self.stats.fallbacks += 1;
                *self.stats.tags.entry(CaseTag::Fallback).or_default() += 1;
                match &violation {
                    Violation::Case00 => self.stats.case00 += 1,
                    Violation::Exhausted => self.stats.exhausted += 1,
                    Violation::Structure(_) => self.stats.structure += 1,
                }
                if seeds[0] == seeds[1] {
                    return Err(Error::Precondition("no pair to branch on".into()));
                }
                let tag = Tag { case: CaseTag::Fallback, side: Side::A };
                self.record(depth, tag, None, Vec::new(), before, Vec::new(), Some(violation));
                for seed in &seeds {
                    let c = self.child_of(&inst, seed)?;
                    if let Some(sep) = self.explore(c, depth + 1)? {
                        return Ok(Some(sep));
                    }
                }
                Ok(None)
            }
        }
    }

    fn single(&mut self, next: TermSepInstance, depth: usize, tag: Tag, before: Potential) -> Result<Option<Labels>> {
        let c = self.reduce(next)?;
        let mut mu_after = vec![f64::NAN];
        if c.outcome == Reduced::Open {
            let after = Potential::of(&c.inst);
            if after.mu() > before.mu() + 1e-9 {
                self.stats.assertion_failures += 1;
            }
            mu_after[0] = after.mu();
        }
        self.record(depth, tag, None, vec![None], before, mu_after, None);
        self.explore(c, depth + 1)
    }

    #[allow(clippy::too_many_arguments)]
    fn record(
        &mut self,
        depth: usize,
        tag: Tag,
        claimed: Option<BranchingVector>,
        realized: Vec<Option<Gain>>,
        before: Potential,
        mu_after: Vec<f64>,
        violation: Option<Violation>,
    ) {
        if self.config.trace {
            self.trace.push(TraceRecord { depth, tag, claimed, realized, mu_before: before.mu(), mu_after, violation });
        }
    }
}

/// Decides a terminal separation instance with default settings.
pub fn solve_recursive(inst: &TermSepInstance) -> Result<Option<TerminalSeparation>> {
    Engine::new(EngineConfig::default()).solve(inst)
}
