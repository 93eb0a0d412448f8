//! Exact computation of the extremal column count by depth-first branch and
//! bound over downward-closed column sets.
//!
//! Deleting columns never creates a configuration, so the feasible column
//! sets form a downward-closed system and a depth-first search over columns
//! in ascending [`ColumnId`](crate::matrix::ColumnId) order, bounded by
//! `|chosen| + |remaining candidates|`, is exact. Adding a column needs only
//! an incremental check: embeddings whose column image includes the new
//! column.

use crate::error::{Error, Result};
use crate::matrix::RMatrix;
use crate::patterns::{self, all_columns, config_equal, find_violation, ConfigFamily};
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

/// Budgets and execution knobs for the search.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Number of worker threads over top-level branches. The reported value
    /// and extremal matrix do not depend on this.
    pub jobs: usize,
    /// Restrict the first chosen column to symbol-orbit minima; applied only
    /// when the family is invariant under the symbol permutation.
    pub symbol_symmetry: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: None,
            time_budget: None,
            jobs: 1,
            symbol_symmetry: false,
        }
    }
}

/// Outcome of an extremal search.
#[derive(Clone, Debug)]
pub struct ForbResult {
    pub m: usize,
    pub r: u8,
    /// Canonical key of the forbidden family (spelling-independent).
    pub family: String,
    /// Fixed ones-count restriction, if any.
    pub k: Option<usize>,
    pub value: usize,
    pub extremal: RMatrix,
    pub nodes: u64,
    pub elapsed: Duration,
    /// False when a budget ran out; the value is then only a lower bound.
    pub exact: bool,
}

/// Maximum number of columns of a simple `m`-rowed matrix over
/// `{0,..,r-1}` containing no family member as a configuration.
pub fn forb_exact(
    m: usize,
    r: u8,
    family: &ConfigFamily,
    cfg: &SearchConfig,
) -> Result<ForbResult> {
    forb_search(m, r, family, None, cfg)
}

/// [`forb_exact`] with the candidate pool restricted to columns with exactly
/// `k` ones (other symbols do not count toward `k`).
pub fn forb_k_exact(
    m: usize,
    r: u8,
    family: &ConfigFamily,
    k: usize,
    cfg: &SearchConfig,
) -> Result<ForbResult> {
    if k > m {
        return Err(Error::invalid(format!("ones count {k} exceeds {m} rows")));
    }
    forb_search(m, r, family, Some(k), cfg)
}

/// Per-row-count results, their maximum, and whether the sequence is
/// monotone (a probe, never a proof, of the monotonicity conjecture).
#[derive(Clone, Debug)]
pub struct ForbmaxReport {
    pub per_m: Vec<ForbResult>,
    pub max_value: usize,
    pub monotone: bool,
    pub all_exact: bool,
}

/// Computes the extremal value for every row count `1..=m` (just `m = 0`
/// when `m` is zero) and reports the running maximum.
pub fn forbmax(
    m: usize,
    r: u8,
    family: &ConfigFamily,
    cfg: &SearchConfig,
) -> Result<ForbmaxReport> {
    let row_counts: Vec<usize> = if m == 0 { vec![0] } else { (1..=m).collect() };
    let mut per_m = Vec::with_capacity(row_counts.len());
    for m_prime in row_counts {
        per_m.push(forb_search(m_prime, r, family, None, cfg)?);
    }
    let max_value = per_m.iter().map(|res| res.value).max().unwrap_or(0);
    let monotone = per_m.windows(2).all(|w| w[0].value <= w[1].value);
    let all_exact = per_m.iter().all(|res| res.exact);
    Ok(ForbmaxReport {
        per_m,
        max_value,
        monotone,
        all_exact,
    })
}

/// First failed re-check of a claimed result.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValidationFailure {
    #[error("extremal matrix has {found} rows, claimed {expected}")]
    WrongRowCount { expected: usize, found: usize },
    #[error("extremal matrix has repeated columns")]
    NotSimple,
    #[error("extremal matrix contains family member {member}")]
    ContainsMember { member: usize },
    #[error("extremal matrix has {actual} columns, claimed {claimed}")]
    WrongCardinality { claimed: usize, actual: usize },
    #[error("column id {column} can be appended without violating avoidance")]
    NotMaximal { column: u128 },
    #[error("cannot rebuild the candidate pool: {0}")]
    Unverifiable(String),
}

/// Re-checks simplicity, avoidance, cardinality, and 1-maximality (every
/// absent candidate column, when appended, creates a violation). Does not
/// re-establish global optimality.
pub fn validate_result(
    res: &ForbResult,
    family: &ConfigFamily,
) -> std::result::Result<(), ValidationFailure> {
    if res.extremal.row_count() != res.m {
        return Err(ValidationFailure::WrongRowCount {
            expected: res.m,
            found: res.extremal.row_count(),
        });
    }
    if !res.extremal.is_simple() {
        return Err(ValidationFailure::NotSimple);
    }
    if let Some(violation) = find_violation(&res.extremal, family) {
        return Err(ValidationFailure::ContainsMember {
            member: violation.member,
        });
    }
    if res.extremal.col_count() != res.value {
        return Err(ValidationFailure::WrongCardinality {
            claimed: res.value,
            actual: res.extremal.col_count(),
        });
    }
    let universe = all_columns(res.m, res.r, res.k)
        .map_err(|e| ValidationFailure::Unverifiable(e.to_string()))?;
    let present: Vec<u128> = res.extremal.col_ids().iter().map(|id| id.0).collect();
    let chosen: Vec<&[u8]> = res.extremal.cols().collect();
    for (j, col) in universe.cols().enumerate() {
        let id = universe.col_id(j).0;
        if present.contains(&id) {
            continue;
        }
        let mut extended = chosen.clone();
        extended.push(col);
        let forced = extended.len() - 1;
        let violated = family.members().iter().any(|f| {
            patterns::contains_in_cols(res.m, res.r, &extended, f, Some(forced)).is_some()
        });
        if !violated {
            return Err(ValidationFailure::NotMaximal { column: id });
        }
    }
    Ok(())
}

struct SearchCtx<'a> {
    m: usize,
    r: u8,
    pool: &'a [Vec<u8>],
    family: &'a ConfigFamily,
    /// Extremal sets can outgrow the 128-column incremental checker only
    /// when the pool itself does; fall back to the allocating oracle then.
    wide: bool,
    best_value: AtomicUsize,
    stop: AtomicBool,
    nodes: AtomicU64,
    node_budget: Option<u64>,
    deadline: Option<Instant>,
}

/// Branch-local search state: the chosen columns both as indices and as
/// column slices, plus the zero-allocation feasibility checker.
struct BranchState<'a, 'f> {
    chosen: Vec<usize>,
    chosen_cols: Vec<&'a [u8]>,
    oracle: patterns::IncrementalOracle<'f>,
}

impl<'a, 'f> BranchState<'a, 'f> {
    fn new(ctx: &SearchCtx<'a>, family: &'f ConfigFamily) -> BranchState<'a, 'f> {
        BranchState {
            chosen: Vec::new(),
            chosen_cols: Vec::new(),
            oracle: patterns::IncrementalOracle::new(ctx.m, ctx.r, family),
        }
    }

    fn push(&mut self, ctx: &SearchCtx<'a>, c: usize) {
        self.chosen.push(c);
        self.chosen_cols.push(&ctx.pool[c]);
        if !ctx.wide {
            self.oracle.push_col(&ctx.pool[c]);
        }
    }

    fn pop(&mut self, ctx: &SearchCtx<'a>) {
        let c = self.chosen.pop().expect("pop on empty branch state");
        self.chosen_cols.pop();
        if !ctx.wide {
            self.oracle.pop_col(&ctx.pool[c]);
        }
    }
}

#[derive(Clone, Default)]
struct Incumbent {
    value: usize,
    set: Vec<usize>,
}

impl<'a> SearchCtx<'a> {
    /// Accounts one search node; false once a budget is exhausted.
    fn tick(&self) -> bool {
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(budget) = self.node_budget {
            if count > budget {
                self.stop.store(true, Ordering::Relaxed);
            }
        }
        if let Some(deadline) = self.deadline {
            if count.is_multiple_of(64) && Instant::now() >= deadline {
                self.stop.store(true, Ordering::Relaxed);
            }
        }
        !self.stop.load(Ordering::Relaxed)
    }

    fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }

    /// True iff appending the candidate keeps the chosen set feasible; only
    /// embeddings through the new column are checked.
    fn extends_feasibly(&self, state: &mut BranchState<'a, '_>, candidate: usize) -> bool {
        if self.wide {
            state.chosen_cols.push(&self.pool[candidate]);
            let forced = state.chosen_cols.len() - 1;
            let ok = self.family.members().iter().all(|f| {
                patterns::contains_in_cols(self.m, self.r, &state.chosen_cols, f, Some(forced))
                    .is_none()
            });
            state.chosen_cols.pop();
            ok
        } else {
            !state.oracle.new_col_violates(&self.pool[candidate])
        }
    }

    fn filter_candidates(&self, state: &mut BranchState<'a, '_>, tail: &[usize]) -> Vec<usize> {
        tail.iter()
            .copied()
            .filter(|&c| self.extends_feasibly(state, c))
            .collect()
    }

    fn dfs(&self, state: &mut BranchState<'a, '_>, cand: &[usize], local: &mut Incumbent) {
        if !self.tick() {
            return;
        }
        if state.chosen.len() > local.value {
            local.value = state.chosen.len();
            local.set = state.chosen.clone();
        }
        self.best_value
            .fetch_max(state.chosen.len(), Ordering::Relaxed);
        for (idx, &c) in cand.iter().enumerate() {
            if self.stopped() {
                return;
            }
            // Suffix potential shrinks with idx, so both prunes allow a break.
            // Ties against the shared incumbent stay explorable; this keeps
            // the reported extremal independent of thread interleaving.
            let potential = state.chosen.len() + (cand.len() - idx);
            if potential <= local.value || potential < self.best_value.load(Ordering::Relaxed) {
                break;
            }
            state.push(self, c);
            let filtered = self.filter_candidates(state, &cand[idx + 1..]);
            self.dfs(state, &filtered, local);
            state.pop(self);
        }
    }
}

fn forb_search(
    m: usize,
    r: u8,
    family: &ConfigFamily,
    k: Option<usize>,
    cfg: &SearchConfig,
) -> Result<ForbResult> {
    if cfg.jobs == 0 {
        return Err(Error::invalid("jobs must be >= 1"));
    }
    if let Some(0) = cfg.node_budget {
        return Err(Error::invalid("node budget must be positive"));
    }
    if cfg.time_budget.is_some_and(|budget| budget.is_zero()) {
        return Err(Error::invalid("time budget must be positive"));
    }
    // a zero-column member embeds in every matrix with enough rows, so
    // nothing avoids the family and the maximum is over an empty set
    if family
        .members()
        .iter()
        .any(|f| f.col_count() == 0 && f.row_count() <= m)
    {
        return Err(Error::invalid(
            "the family forbids the empty configuration; no matrix avoids it",
        ));
    }
    let start = Instant::now();
    let universe = all_columns(m, r, k)?;
    let pool: Vec<Vec<u8>> = universe.cols().map(|c| c.to_vec()).collect();
    let ctx = SearchCtx {
        m,
        r,
        pool: &pool,
        family,
        wide: pool.len() > 128,
        best_value: AtomicUsize::new(0),
        stop: AtomicBool::new(false),
        nodes: AtomicU64::new(0),
        node_budget: cfg.node_budget,
        deadline: cfg.time_budget.map(|budget| start + budget),
    };

    // columns that are individually feasible, ascending by id
    let feasible: Vec<usize> = {
        let mut state = BranchState::new(&ctx, family);
        ctx.filter_candidates(&mut state, &(0..pool.len()).collect::<Vec<_>>())
    };
    // the symmetry reduction restricts only the first chosen column (the
    // minimum of the set); deeper candidates stay unrestricted
    let mut roots: Vec<usize> = feasible.clone();
    if cfg.symbol_symmetry {
        let perms = family_symbol_perms(family, r, k.is_some());
        if !perms.is_empty() {
            roots.retain(|&c| is_orbit_min(&pool[c], r, &perms));
        }
    }
    let branches: Vec<Branch> = {
        let mut out = Vec::with_capacity(roots.len());
        let mut pos = 0;
        for &root in &roots {
            while feasible[pos] != root {
                pos += 1;
            }
            out.push(Branch {
                root,
                tail_start: pos + 1,
            });
        }
        out
    };

    let best = if cfg.jobs == 1 {
        run_sequential(&ctx, family, &feasible, &branches)
    } else {
        run_parallel(&ctx, family, &feasible, &branches, cfg.jobs)
    };

    let exact = !ctx.stopped();
    let mut set = best.set;
    if !exact {
        greedy_extend(&ctx, family, &mut set);
    }
    set.sort_unstable();
    let cols = set.iter().map(|&i| pool[i].clone()).collect();
    let extremal = RMatrix::from_cols(m, r, cols)?;
    Ok(ForbResult {
        m,
        r,
        family: family.canonical_key(),
        k,
        value: set.len(),
        extremal,
        nodes: ctx.nodes.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
        exact,
    })
}

/// A top-level branch: its first column and where its candidate tail starts
/// in the feasible list.
struct Branch {
    root: usize,
    tail_start: usize,
}

fn run_branch(
    ctx: &SearchCtx<'_>,
    family: &ConfigFamily,
    feasible: &[usize],
    branch: &Branch,
    local: &mut Incumbent,
) {
    let mut state = BranchState::new(ctx, family);
    state.push(ctx, branch.root);
    let cand = ctx.filter_candidates(&mut state, &feasible[branch.tail_start..]);
    ctx.dfs(&mut state, &cand, local);
}

fn run_sequential(
    ctx: &SearchCtx<'_>,
    family: &ConfigFamily,
    feasible: &[usize],
    branches: &[Branch],
) -> Incumbent {
    let mut local = Incumbent::default();
    if !ctx.tick() {
        return local; // the empty-set node already blows the budget
    }
    for branch in branches {
        if ctx.stopped() {
            break;
        }
        // branch potentials shrink with the root id, so pruning may break
        let potential = 1 + (feasible.len() - branch.tail_start);
        if potential <= local.value || potential < ctx.best_value.load(Ordering::Relaxed) {
            break;
        }
        run_branch(ctx, family, feasible, branch, &mut local);
    }
    local
}

/// Runs top-level branches on worker threads. Branches share only the
/// monotone incumbent value; each keeps its own best set, and the fold below
/// prefers the earliest branch achieving the maximum, which is exactly what
/// a single-threaded run reports.
fn run_parallel(
    ctx: &SearchCtx<'_>,
    family: &ConfigFamily,
    feasible: &[usize],
    branches: &[Branch],
    jobs: usize,
) -> Incumbent {
    ctx.tick(); // the empty-set node
    let results: Mutex<Vec<Option<Incumbent>>> = Mutex::new(vec![None; branches.len()]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(branches.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= branches.len() || ctx.stopped() {
                    break;
                }
                let branch = &branches[i];
                let potential = 1 + (feasible.len() - branch.tail_start);
                if potential < ctx.best_value.load(Ordering::Relaxed) {
                    continue; // cannot even tie; never hosts the optimum
                }
                let mut local = Incumbent::default();
                run_branch(ctx, family, feasible, branch, &mut local);
                results.lock().unwrap()[i] = Some(local);
            });
        }
    });
    let mut best = Incumbent::default();
    for incumbent in results.into_inner().unwrap().into_iter().flatten() {
        if incumbent.value > best.value {
            best = incumbent;
        }
    }
    best
}

/// Extends a truncated lower-bound set to 1-maximality, ascending order.
fn greedy_extend(ctx: &SearchCtx<'_>, family: &ConfigFamily, set: &mut Vec<usize>) {
    let mut state = BranchState::new(ctx, family);
    for &c in set.iter() {
        state.push(ctx, c);
    }
    for c in 0..ctx.pool.len() {
        if set.contains(&c) {
            continue;
        }
        if ctx.extends_feasibly(&mut state, c) {
            state.push(ctx, c);
            set.push(c);
        }
    }
}

/// Symbol permutations (other than the identity) under which every family
/// member maps to a family member. When `fix_one` is set only permutations
/// fixing symbol 1 qualify (the ones-count pool must stay invariant).
fn family_symbol_perms(family: &ConfigFamily, r: u8, fix_one: bool) -> Vec<Vec<u8>> {
    if r > 5 {
        return Vec::new(); // factorially many; not worth it beyond tiny alphabets
    }
    let mut perms = Vec::new();
    let mut current: Vec<u8> = (0..r).collect();
    loop {
        let is_identity = current.iter().enumerate().all(|(i, &s)| i as u8 == s);
        let fixes_one = !fix_one || r < 2 || current[1] == 1;
        if !is_identity && fixes_one && family_invariant(family, &current) {
            perms.push(current.clone());
        }
        if !next_permutation(&mut current) {
            break;
        }
    }
    perms
}

fn family_invariant(family: &ConfigFamily, perm: &[u8]) -> bool {
    family.members().iter().all(|f| {
        let relabeled = relabel(f, perm);
        family.members().iter().any(|g| {
            g.row_count() == relabeled.row_count()
                && g.col_count() == relabeled.col_count()
                && config_equal(g, &relabeled)
        })
    })
}

fn relabel(f: &RMatrix, perm: &[u8]) -> RMatrix {
    let cols = f
        .cols()
        .map(|col| {
            col.iter()
                .map(|&s| {
                    if (s as usize) < perm.len() {
                        perm[s as usize]
                    } else {
                        s
                    }
                })
                .collect()
        })
        .collect();
    RMatrix::from_cols(f.row_count(), f.alphabet().max(perm.len() as u8), cols)
        .expect("relabeling keeps entries in range")
}

fn is_orbit_min(col: &[u8], r: u8, perms: &[Vec<u8>]) -> bool {
    let id = crate::matrix::ColumnId::encode(col, r).expect("pool column");
    for perm in perms {
        let image: Vec<u8> = col.iter().map(|&s| perm[s as usize]).collect();
        if crate::matrix::ColumnId::encode(&image, r).expect("permuted column") < id {
            return false;
        }
    }
    true
}

fn next_permutation(items: &mut [u8]) -> bool {
    let n = items.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}
