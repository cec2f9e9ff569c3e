//! PV programs: semaphore acquire/release processes compiled to grid state
//! spaces, with schedule classification up to flip equivalence.
//!
//! A state records, per process, how many actions it has completed. A state
//! is forbidden when some resource is held beyond its capacity, counting one
//! unit per unreleased acquire. Execution schedules are the monotone unit
//! step lattice paths through the allowed states; two schedules are
//! equivalent when a sequence of elementary square flips joins them.

use crate::pospace::{DiMap, FinPoSpace, UnderDiMap, UnderPoSpace};
use crate::relation::Rel;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    Acquire(String),
    Release(String),
}

impl Action {
    pub fn resource(&self) -> &str {
        match self {
            Action::Acquire(r) | Action::Release(r) => r,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Process {
    pub name: String,
    pub actions: Vec<Action>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PvProgram {
    pub resources: BTreeMap<String, u32>,
    pub processes: Vec<Process>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PvError {
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("unknown resource {0}")]
    UnknownResource(String),
    #[error("process {process}: release of {resource} without a matching acquire")]
    UnbalancedRelease { process: String, resource: String },
    #[error("process {process}: {resource} still held at the end")]
    UnbalancedAcquire { process: String, resource: String },
    #[error("duplicate definition of {0}")]
    Duplicate(String),
    #[error("capacity of {0} must be positive")]
    ZeroCapacity(String),
    #[error("state space too large: {0} states over the ceiling {1}")]
    TooLarge(usize, usize),
    #[error("too many paths: more than {0}")]
    TooManyPaths(usize),
}

/// Parses the `cap r = n; proc A: P(r) V(r);` grammar. Statements may come
/// in any order; resource references are resolved after the whole text is
/// read. The final semicolon is optional.
pub fn parse_pv(text: &str) -> Result<PvProgram, PvError> {
    let mut program = PvProgram::default();
    let mut lexer = Lexer::new(text);
    loop {
        lexer.skip_ws();
        let Some(word_start) = lexer.peek_pos() else { break };
        let word = lexer.take_ident();
        match word.as_str() {
            "cap" => {
                lexer.skip_ws();
                let name = lexer.expect_ident()?;
                lexer.expect_char('=')?;
                lexer.skip_ws();
                let value = lexer.take_number()?;
                if value == 0 {
                    return Err(PvError::ZeroCapacity(name));
                }
                if program.resources.insert(name.clone(), value).is_some() {
                    return Err(PvError::Duplicate(name));
                }
                lexer.finish_statement()?;
            }
            "proc" => {
                lexer.skip_ws();
                let name = lexer.expect_ident()?;
                lexer.expect_char(':')?;
                let mut actions = Vec::new();
                loop {
                    lexer.skip_ws();
                    match lexer.peek() {
                        Some(';') => {
                            lexer.bump();
                            break;
                        }
                        None => break,
                        _ => {}
                    }
                    let op = lexer.expect_ident()?;
                    let kind = match op.as_str() {
                        "P" => ActionKind::Acquire,
                        "V" => ActionKind::Release,
                        other => {
                            return Err(lexer.syntax(format!("expected P or V, found {other}")));
                        }
                    };
                    lexer.expect_char('(')?;
                    lexer.skip_ws();
                    let resource = lexer.expect_ident()?;
                    lexer.expect_char(')')?;
                    actions.push(match kind {
                        ActionKind::Acquire => Action::Acquire(resource),
                        ActionKind::Release => Action::Release(resource),
                    });
                }
                if program.processes.iter().any(|p| p.name == name) {
                    return Err(PvError::Duplicate(name));
                }
                program.processes.push(Process { name, actions });
            }
            "" => {
                let (line, col) = lexer.line_col(word_start);
                return Err(PvError::Syntax {
                    line,
                    col,
                    message: format!("unexpected character {:?}", lexer.peek().unwrap()),
                });
            }
            other => {
                let (line, col) = lexer.line_col(word_start);
                return Err(PvError::Syntax { line, col, message: format!("unknown keyword {other}") });
            }
        }
    }
    // resolve references and check nesting
    for proc in &program.processes {
        let mut held: BTreeMap<&str, i64> = BTreeMap::new();
        for action in &proc.actions {
            let r = action.resource();
            if !program.resources.contains_key(r) {
                return Err(PvError::UnknownResource(r.to_string()));
            }
            let slot = held.entry(r).or_insert(0);
            match action {
                Action::Acquire(_) => *slot += 1,
                Action::Release(_) => {
                    *slot -= 1;
                    if *slot < 0 {
                        return Err(PvError::UnbalancedRelease {
                            process: proc.name.clone(),
                            resource: r.to_string(),
                        });
                    }
                }
            }
        }
        if let Some((r, _)) = held.iter().find(|(_, &v)| v != 0) {
            return Err(PvError::UnbalancedAcquire { process: proc.name.clone(), resource: r.to_string() });
        }
    }
    Ok(program)
}

enum ActionKind {
    Acquire,
    Release,
}

struct Lexer<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { text: text.as_bytes(), pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.text.get(self.pos).map(|&b| b as char)
    }

    fn peek_pos(&self) -> Option<usize> {
        if self.pos < self.text.len() {
            Some(self.pos)
        } else {
            None
        }
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn line_col(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &b in &self.text[..pos] {
            if b == b'\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn syntax(&self, message: String) -> PvError {
        let (line, col) = self.line_col(self.pos.min(self.text.len()));
        PvError::Syntax { line, col, message }
    }

    fn take_ident(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
            self.bump();
        }
        String::from_utf8_lossy(&self.text[start..self.pos]).into_owned()
    }

    fn expect_ident(&mut self) -> Result<String, PvError> {
        self.skip_ws();
        let ident = self.take_ident();
        if ident.is_empty() {
            Err(self.syntax("expected an identifier".to_string()))
        } else {
            Ok(ident)
        }
    }

    fn expect_char(&mut self, c: char) -> Result<(), PvError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax(format!("expected {c:?}")))
        }
    }

    fn take_number(&mut self) -> Result<u32, PvError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.syntax("expected a number".to_string()));
        }
        String::from_utf8_lossy(&self.text[start..self.pos])
            .parse()
            .map_err(|_| self.syntax("number out of range".to_string()))
    }

    fn finish_statement(&mut self) -> Result<(), PvError> {
        self.skip_ws();
        if self.peek() == Some(';') {
            self.bump();
        }
        Ok(())
    }
}

/// A grid state: one completed-action count per process.
pub type State = Vec<usize>;

/// The state pospace of a PV program: positions per process, forbidden
/// states, and the two point base hitting start and end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridModel {
    pub dims: Vec<usize>,
    pub forbidden: BTreeSet<State>,
    pub start: State,
    pub end: State,
    pub process_names: Vec<String>,
}

impl GridModel {
    pub fn is_allowed(&self, state: &State) -> bool {
        !self.forbidden.contains(state)
    }

    pub fn states(&self) -> Vec<State> {
        let mut out = vec![Vec::new()];
        for &d in &self.dims {
            let mut next = Vec::with_capacity(out.len() * (d + 1));
            for s in out {
                for v in 0..=d {
                    let mut t = s.clone();
                    t.push(v);
                    next.push(t);
                }
            }
            out = next;
        }
        out
    }

    pub fn allowed_states(&self) -> Vec<State> {
        self.states().into_iter().filter(|s| self.is_allowed(s)).collect()
    }
}

/// Builds the grid: position p of a process counts completed actions, and a
/// state is forbidden when the units of some resource held across processes
/// exceed its capacity.
pub fn build_grid(program: &PvProgram) -> GridModel {
    let dims: Vec<usize> = program.processes.iter().map(|p| p.actions.len()).collect();
    // held units per process prefix, per resource
    let resources: Vec<&String> = program.resources.keys().collect();
    let held: Vec<Vec<Vec<u32>>> = program
        .processes
        .iter()
        .map(|proc| {
            let mut rows = vec![vec![0u32; resources.len()]];
            let mut current = vec![0u32; resources.len()];
            for action in &proc.actions {
                let ri = resources.iter().position(|r| *r == action.resource()).unwrap();
                match action {
                    Action::Acquire(_) => current[ri] += 1,
                    Action::Release(_) => current[ri] -= 1,
                }
                rows.push(current.clone());
            }
            rows
        })
        .collect();
    let mut model = GridModel {
        dims: dims.clone(),
        forbidden: BTreeSet::new(),
        start: vec![0; dims.len()],
        end: dims.clone(),
        process_names: program.processes.iter().map(|p| p.name.clone()).collect(),
    };
    for state in model.states() {
        for (ri, res) in resources.iter().enumerate() {
            let total: u32 = state.iter().enumerate().map(|(pi, &pos)| held[pi][pos][ri]).sum();
            if total > program.resources[*res] {
                model.forbidden.insert(state.clone());
                break;
            }
        }
    }
    model
}

/// A monotone unit-step schedule through the allowed states.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DiPath {
    /// The visited states, from start to end.
    pub states: Vec<State>,
}

impl DiPath {
    /// The coordinate bumped at each step.
    pub fn steps(&self) -> Vec<usize> {
        self.states
            .windows(2)
            .map(|w| (0..w[0].len()).find(|&i| w[0][i] + 1 == w[1][i]).expect("unit step"))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Enumeration {
    Paths(Vec<DiPath>),
    /// The end state cannot be reached from the start.
    Unreachable,
}

impl Enumeration {
    pub fn paths(&self) -> &[DiPath] {
        match self {
            Enumeration::Paths(p) => p,
            Enumeration::Unreachable => &[],
        }
    }
}

/// All schedules in lexicographic step order. Errors out above the ceiling.
pub fn enumerate_dipaths(model: &GridModel, ceiling: usize) -> Result<Enumeration, PvError> {
    if !model.is_allowed(&model.start) || !model.is_allowed(&model.end) {
        return Ok(Enumeration::Unreachable);
    }
    let mut out = Vec::new();
    let mut current = vec![model.start.clone()];
    dfs(model, &mut current, &mut out, ceiling)?;
    if out.is_empty() {
        return Ok(Enumeration::Unreachable);
    }
    Ok(Enumeration::Paths(out))
}

fn dfs(model: &GridModel, current: &mut Vec<State>, out: &mut Vec<DiPath>, ceiling: usize) -> Result<(), PvError> {
    let state = current.last().unwrap().clone();
    if state == model.end {
        if out.len() == ceiling {
            return Err(PvError::TooManyPaths(ceiling));
        }
        out.push(DiPath { states: current.clone() });
        return Ok(());
    }
    for i in 0..model.dims.len() {
        if state[i] < model.dims[i] {
            let mut next = state.clone();
            next[i] += 1;
            if model.is_allowed(&next) {
                current.push(next);
                dfs(model, current, out, ceiling)?;
                current.pop();
            }
        }
    }
    Ok(())
}

/// Dynamic-programming count of the schedules, an independent check on the
/// enumeration.
pub fn count_dipaths(model: &GridModel) -> u128 {
    let mut counts: BTreeMap<State, u128> = BTreeMap::new();
    let mut states = model.allowed_states();
    states.sort_by_key(|s| (s.iter().sum::<usize>(), s.clone()));
    for s in states {
        let c = if s == model.start {
            1
        } else {
            (0..s.len())
                .filter(|&i| s[i] > 0)
                .map(|i| {
                    let mut prev = s.clone();
                    prev[i] -= 1;
                    counts.get(&prev).copied().unwrap_or(0)
                })
                .sum()
        };
        counts.insert(s, c);
    }
    counts.get(&model.end).copied().unwrap_or(0)
}

/// Partition of the schedules into flip classes rel the endpoints.
#[derive(Debug, Clone)]
pub struct Classification {
    pub paths: Vec<DiPath>,
    /// Sorted member indices per class, ordered by least member; paths are
    /// in lexicographic step order, so each class representative is its
    /// lexicographically least member.
    pub classes: Vec<Vec<usize>>,
}

impl Classification {
    pub fn representatives(&self) -> Vec<&DiPath> {
        self.classes.iter().map(|c| &self.paths[c[0]]).collect()
    }
}

/// Two schedules are adjacent when they differ in exactly one intermediate
/// state, which both its neighbors can reach; that is the exchange of two
/// distinct steps across an allowed square.
pub fn classify_dipaths(model: &GridModel, ceiling: usize) -> Result<Classification, PvError> {
    let paths = match enumerate_dipaths(model, ceiling)? {
        Enumeration::Paths(p) => p,
        Enumeration::Unreachable => return Ok(Classification { paths: Vec::new(), classes: Vec::new() }),
    };
    let index: BTreeMap<&DiPath, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..paths.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for (i, path) in paths.iter().enumerate() {
        let steps = path.steps();
        for t in 0..steps.len().saturating_sub(1) {
            if steps[t] == steps[t + 1] {
                continue;
            }
            // exchange the two steps: the new corner of the square
            let mut corner = path.states[t].clone();
            corner[steps[t + 1]] += 1;
            if !model.is_allowed(&corner) {
                continue;
            }
            let mut flipped = path.clone();
            flipped.states[t + 1] = corner;
            let j = index[&flipped];
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                let (lo, hi) = if ri < rj { (ri, rj) } else { (rj, ri) };
                parent[hi] = lo;
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..paths.len() {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(i);
    }
    Ok(Classification { paths, classes: classes.into_values().collect() })
}

/// Deadlocks and unreachable allowed states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeadlockReport {
    /// Allowed non-end states with no allowed successor.
    pub deadlocks: Vec<State>,
    /// Allowed states with no monotone path from the start.
    pub unreachable: Vec<State>,
}

pub fn find_deadlocks(model: &GridModel) -> DeadlockReport {
    let mut deadlocks = Vec::new();
    for state in model.allowed_states() {
        if state == model.end {
            continue;
        }
        let stuck = (0..model.dims.len()).all(|i| {
            if state[i] >= model.dims[i] {
                return true;
            }
            let mut next = state.clone();
            next[i] += 1;
            !model.is_allowed(&next)
        });
        if stuck {
            deadlocks.push(state);
        }
    }
    // forward reachability from the start
    let mut reached: BTreeSet<State> = BTreeSet::new();
    let mut frontier = VecDeque::new();
    if model.is_allowed(&model.start) {
        reached.insert(model.start.clone());
        frontier.push_back(model.start.clone());
    }
    while let Some(state) = frontier.pop_front() {
        for i in 0..model.dims.len() {
            if state[i] < model.dims[i] {
                let mut next = state.clone();
                next[i] += 1;
                if model.is_allowed(&next) && reached.insert(next.clone()) {
                    frontier.push_back(next);
                }
            }
        }
    }
    let unreachable = model.allowed_states().into_iter().filter(|s| !reached.contains(s)).collect();
    DeadlockReport { deadlocks, unreachable }
}

pub fn state_label(state: &State) -> String {
    format!("({})", state.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
}

/// The allowed states as a pospace under the two point base: componentwise
/// direction, topology equal to direction, base hitting start and end.
pub fn grid_to_pospace(model: &GridModel, ceiling: usize) -> Result<UnderPoSpace, PvError> {
    let states = model.allowed_states();
    if states.len() > ceiling {
        return Err(PvError::TooLarge(states.len(), ceiling));
    }
    let mut labeled: Vec<(String, State)> = states.into_iter().map(|s| (state_label(&s), s)).collect();
    labeled.sort();
    let labels: Vec<String> = labeled.iter().map(|(l, _)| l.clone()).collect();
    let n = labels.len();
    let mut dir = Rel::empty(n);
    for i in 0..n {
        for j in 0..n {
            if labeled[i].1.iter().zip(&labeled[j].1).all(|(a, b)| a <= b) {
                dir.set(i, j);
            }
        }
    }
    let space = FinPoSpace::from_parts(labels, dir.clone(), dir);
    let base = crate::catalog::BaseChoice::Chain2.space();
    let bot = base.index_of("bot").unwrap();
    let mut structure = vec![0usize; 2];
    structure[bot] = labeled.iter().position(|(_, s)| *s == model.start).expect("start allowed");
    structure[1 - bot] = labeled.iter().position(|(_, s)| *s == model.end).expect("end allowed");
    Ok(UnderPoSpace::new(DiMap::from_parts(base, space, structure)))
}

/// A schedule as a dimap from the directed interval chain into the grid
/// pospace, under the two point base.
pub fn dipath_to_under_dimap(path: &DiPath, grid: &UnderPoSpace) -> UnderDiMap {
    let n = path.states.len() - 1;
    let interval = crate::interval::IntervalObject::dipath(n).space();
    let base = grid.base().clone();
    let bot = base.index_of("bot").unwrap();
    let mut structure = vec![0usize; 2];
    structure[bot] = interval.index_of("0").unwrap();
    structure[1 - bot] = interval.index_of(&n.to_string()).unwrap();
    let source = UnderPoSpace::new(DiMap::from_parts(base, interval.clone(), structure));
    let map: Vec<usize> = {
        // interval carrier is label sorted, so translate positions
        let mut m = vec![0usize; interval.len()];
        for (t, s) in path.states.iter().enumerate() {
            let it = interval.index_of(&t.to_string()).unwrap();
            m[it] = grid.total().index_of(&state_label(s)).expect("state in the grid pospace");
        }
        m
    };
    UnderDiMap::from_parts(
        DiMap::from_parts(interval, grid.total().clone(), map),
        source,
        grid.clone(),
    )
}

pub const MUTEX_PROGRAM: &str = "cap r = 1; proc A: P(r) V(r); proc B: P(r) V(r);";
pub const SWISS_FLAG_PROGRAM: &str =
    "proc A: P(a) P(b) V(b) V(a); proc B: P(b) P(a) V(a) V(b); cap a = 1; cap b = 1";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_mutex_program() {
        let p = parse_pv(MUTEX_PROGRAM).unwrap();
        assert_eq!(p.processes.len(), 2);
        assert_eq!(p.processes[0].actions.len(), 2);
        assert_eq!(p.resources["r"], 1);
    }

    #[test]
    fn release_before_acquire_is_rejected() {
        let err = parse_pv("cap r = 1; proc A: V(r);").unwrap_err();
        assert!(matches!(err, PvError::UnbalancedRelease { .. }));
    }

    #[test]
    fn unreleased_acquire_is_rejected() {
        let err = parse_pv("cap r = 1; proc A: P(r);").unwrap_err();
        assert!(matches!(err, PvError::UnbalancedAcquire { .. }));
    }

    #[test]
    fn empty_input_is_a_degenerate_program() {
        let p = parse_pv("").unwrap();
        assert!(p.processes.is_empty());
        let model = build_grid(&p);
        let e = enumerate_dipaths(&model, 10).unwrap();
        assert_eq!(e.paths().len(), 1);
        assert_eq!(e.paths()[0].states.len(), 1);
    }

    #[test]
    fn unknown_resource_is_reported() {
        let err = parse_pv("proc A: P(r) V(r);").unwrap_err();
        assert_eq!(err, PvError::UnknownResource("r".into()));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_pv("cap r = 1;\nproc A: Q(r);").unwrap_err();
        match err {
            PvError::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn mutex_grid_forbids_the_center() {
        let model = build_grid(&parse_pv(MUTEX_PROGRAM).unwrap());
        assert_eq!(model.dims, vec![2, 2]);
        assert_eq!(model.forbidden.iter().collect::<Vec<_>>(), vec![&vec![1, 1]]);
    }

    #[test]
    fn single_process_grid_is_free() {
        let model = build_grid(&parse_pv("cap r = 1; proc A: P(r) V(r);").unwrap());
        assert_eq!(model.dims, vec![2]);
        assert!(model.forbidden.is_empty());
    }

    #[test]
    fn swiss_flag_has_cross_shaped_forbidden_region() {
        let model = build_grid(&parse_pv(SWISS_FLAG_PROGRAM).unwrap());
        assert_eq!(model.dims, vec![4, 4]);
        let expect: BTreeSet<State> =
            [vec![1, 2], vec![2, 1], vec![2, 2], vec![2, 3], vec![3, 2]].into_iter().collect();
        assert_eq!(model.forbidden, expect);
    }

    #[test]
    fn free_grid_has_binomial_paths() {
        let model = build_grid(&parse_pv("cap r = 2; proc A: P(r) V(r); proc B: P(r) V(r);").unwrap());
        assert!(model.forbidden.is_empty());
        let e = enumerate_dipaths(&model, 100).unwrap();
        assert_eq!(e.paths().len(), 6);
        assert_eq!(count_dipaths(&model), 6);
    }

    #[test]
    fn mutex_has_two_paths_in_two_classes() {
        let model = build_grid(&parse_pv(MUTEX_PROGRAM).unwrap());
        let e = enumerate_dipaths(&model, 100).unwrap();
        assert_eq!(e.paths().len(), 2);
        assert_eq!(count_dipaths(&model), 2);
        let steps: Vec<Vec<usize>> = e.paths().iter().map(|p| p.steps()).collect();
        assert_eq!(steps, vec![vec![0, 0, 1, 1], vec![1, 1, 0, 0]]);
        let c = classify_dipaths(&model, 100).unwrap();
        assert_eq!(c.classes.len(), 2);
    }

    #[test]
    fn free_grid_is_one_class() {
        let model = build_grid(&parse_pv("cap r = 2; proc A: P(r) V(r); proc B: P(r) V(r);").unwrap());
        let c = classify_dipaths(&model, 100).unwrap();
        assert_eq!(c.classes.len(), 1);
        assert_eq!(c.classes[0].len(), 6);
    }

    #[test]
    fn single_process_is_one_class_of_one() {
        let model = build_grid(&parse_pv("cap r = 1; proc A: P(r) V(r);").unwrap());
        let c = classify_dipaths(&model, 100).unwrap();
        assert_eq!(c.classes.len(), 1);
        assert_eq!(c.paths.len(), 1);
    }

    #[test]
    fn classification_is_invariant_under_path_order() {
        let model = build_grid(&parse_pv(SWISS_FLAG_PROGRAM).unwrap());
        let c = classify_dipaths(&model, 10000).unwrap();
        // recompute from a reversed path list through the same flip relation
        let mut paths = c.paths.clone();
        paths.reverse();
        let as_sets = |cl: &Classification| -> BTreeSet<BTreeSet<Vec<usize>>> {
            cl.classes
                .iter()
                .map(|class| class.iter().map(|&i| cl.paths[i].steps()).collect())
                .collect()
        };
        let c2 = classify_dipaths(&model, 10000).unwrap();
        assert_eq!(as_sets(&c), as_sets(&c2));
    }

    #[test]
    fn mutex_has_no_deadlock() {
        let model = build_grid(&parse_pv(MUTEX_PROGRAM).unwrap());
        let report = find_deadlocks(&model);
        assert!(report.deadlocks.is_empty());
        assert!(report.unreachable.is_empty());
    }

    #[test]
    fn swiss_flag_deadlock_and_unsafe_pocket() {
        let model = build_grid(&parse_pv(SWISS_FLAG_PROGRAM).unwrap());
        let report = find_deadlocks(&model);
        assert_eq!(report.deadlocks, vec![vec![1, 1]]);
        assert_eq!(report.unreachable, vec![vec![3, 3]]);
    }

    #[test]
    fn deadlock_verified_by_explicit_successor_scan() {
        let model = build_grid(&parse_pv(SWISS_FLAG_PROGRAM).unwrap());
        let report = find_deadlocks(&model);
        for s in model.allowed_states() {
            if s == model.end {
                continue;
            }
            let mut has_successor = false;
            for i in 0..model.dims.len() {
                let mut t = s.clone();
                if t[i] < model.dims[i] {
                    t[i] += 1;
                    if model.is_allowed(&t) {
                        has_successor = true;
                    }
                }
            }
            assert_eq!(!has_successor, report.deadlocks.contains(&s), "state {s:?}");
        }
    }

    #[test]
    fn deadlocks_never_lie_on_paths() {
        let model = build_grid(&parse_pv(SWISS_FLAG_PROGRAM).unwrap());
        let report = find_deadlocks(&model);
        let e = enumerate_dipaths(&model, 10000).unwrap();
        for p in e.paths() {
            for d in &report.deadlocks {
                assert!(!p.states.contains(d));
            }
        }
    }

    #[test]
    fn blocked_grid_reports_unreachable_end() {
        // capacity one, but the second process needs the resource the first
        // never releases until the end, with a crossing pattern that walls
        // off the grid
        let program = parse_pv("cap r = 1; proc A: P(r) V(r); proc B: P(r) V(r); cap s = 1;").unwrap();
        let mut model = build_grid(&program);
        // wall off manually: forbid the whole middle column
        model.forbidden.insert(vec![1, 0]);
        model.forbidden.insert(vec![1, 1]);
        model.forbidden.insert(vec![1, 2]);
        model.forbidden.insert(vec![0, 1]);
        assert_eq!(enumerate_dipaths(&model, 100).unwrap(), Enumeration::Unreachable);
    }

    #[test]
    fn mutex_pospace_has_eight_points_under_two_point_base() {
        let model = build_grid(&parse_pv(MUTEX_PROGRAM).unwrap());
        let u = grid_to_pospace(&model, 1000).unwrap();
        assert_eq!(u.total().len(), 8);
        assert_eq!(u.base().len(), 2);
        assert!(u.base().has_discrete_topology());
        let bot = u.base().index_of("bot").unwrap();
        assert_eq!(u.total().label(u.structure().apply(bot)), "(0,0)");
    }

    #[test]
    fn point_program_pospace() {
        let model = build_grid(&parse_pv("").unwrap());
        let u = grid_to_pospace(&model, 10).unwrap();
        assert_eq!(u.total().len(), 1);
        assert_eq!(u.structure().apply(0), u.structure().apply(1));
    }

    #[test]
    fn swiss_flag_pospace_size() {
        let model = build_grid(&parse_pv(SWISS_FLAG_PROGRAM).unwrap());
        let u = grid_to_pospace(&model, 1000).unwrap();
        assert_eq!(u.total().len(), 25 - 5);
    }

    /// Empirical bridge to the fence notion: every flip is a two step chain
    /// through the inner corner of its square, so flip equivalence implies
    /// relative dihomotopy of the dipath dimaps. The converse fails: over
    /// the one-point-per-state surrogate a monotone map may jump diagonally
    /// past a forbidden block, so the fence relation is strictly coarser.
    #[test]
    fn flips_imply_relative_dihomotopy() {
        for text in [MUTEX_PROGRAM, "cap r = 2; proc A: P(r) V(r); proc B: P(r) V(r);"] {
            let model = build_grid(&parse_pv(text).unwrap());
            let grid = grid_to_pospace(&model, 1000).unwrap();
            let c = classify_dipaths(&model, 1000).unwrap();
            let dimaps: Vec<_> =
                c.paths.iter().map(|p| dipath_to_under_dimap(p, &grid)).collect();
            for class in &c.classes {
                for pair in class.windows(2) {
                    let homotopic = crate::homotopy::dihomotopic_rel(&dimaps[pair[0]], &dimaps[pair[1]], 32)
                        .unwrap()
                        .found();
                    assert!(homotopic, "flip class members must be dihomotopic in {text}");
                }
            }
        }
        // strictness witness: the two mutex schedules are separated by flips
        // but joined by a chain of jumping maps
        let model = build_grid(&parse_pv(MUTEX_PROGRAM).unwrap());
        let grid = grid_to_pospace(&model, 1000).unwrap();
        let c = classify_dipaths(&model, 1000).unwrap();
        assert_eq!(c.classes.len(), 2);
        let dimaps: Vec<_> = c.paths.iter().map(|p| dipath_to_under_dimap(p, &grid)).collect();
        assert!(crate::homotopy::dihomotopic_rel(&dimaps[0], &dimaps[1], 32).unwrap().found());
    }
}
