//! Deterministic finite automata over colors.

use crate::arena::{Alphabet, Color, ValidationReport, Violation};
use crate::error::GameError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub u32);

impl StateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A DFA whose transition table may still be partial.
///
/// If a default sink is set, [`DfaBuilder::build`] routes every missing
/// transition there.
#[derive(Debug, Clone)]
pub struct DfaBuilder {
    alphabet: Alphabet,
    names: Vec<String>,
    initial: StateId,
    accepting: Vec<bool>,
    delta: Vec<Option<StateId>>,
    default_sink: Option<StateId>,
}

impl DfaBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        DfaBuilder {
            alphabet,
            names: Vec::new(),
            initial: StateId(0),
            accepting: Vec::new(),
            delta: Vec::new(),
            default_sink: None,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state(&mut self, name: impl Into<String>, accepting: bool) -> StateId {
        let q = StateId(self.names.len() as u32);
        self.names.push(name.into());
        self.accepting.push(accepting);
        self.delta
            .extend(std::iter::repeat(None).take(self.alphabet.len()));
        q
    }

    pub fn initial(&mut self, q: StateId) -> &mut Self {
        self.initial = q;
        self
    }

    pub fn set_accepting(&mut self, q: StateId, accepting: bool) -> &mut Self {
        self.accepting[q.index()] = accepting;
        self
    }

    pub fn transition(&mut self, from: StateId, color: Color, to: StateId) -> &mut Self {
        let k = self.alphabet.len();
        self.delta[from.index() * k + color.index()] = Some(to);
        self
    }

    /// Looks the color up by name.
    pub fn transition_named(
        &mut self,
        from: StateId,
        color: &str,
        to: StateId,
    ) -> Result<&mut Self, GameError> {
        let c = self
            .alphabet
            .get(color)
            .ok_or_else(|| GameError::UnknownColor(color.to_string()))?;
        Ok(self.transition(from, c, to))
    }

    /// Completes missing transitions into `sink` at build time.
    pub fn default_sink(&mut self, sink: StateId) -> &mut Self {
        self.default_sink = Some(sink);
        self
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| StateId(i as u32))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.names.len();
        if self.alphabet.is_empty() {
            report.push(Violation::EmptyAlphabet);
        }
        if self.initial.index() >= n {
            report.push(Violation::UnknownState(self.initial.index()));
            return report;
        }
        if let Some(s) = self.default_sink {
            if s.index() >= n {
                report.push(Violation::UnknownState(s.index()));
            }
        }
        if self.accepting[self.initial.index()] {
            report.push(Violation::EmptyWordAccepted);
        }
        let k = self.alphabet.len();
        for q in 0..n {
            for c in 0..k {
                match self.delta[q * k + c] {
                    Some(t) if t.index() >= n => report.push(Violation::UnknownState(t.index())),
                    None if self.default_sink.is_none() => {
                        report.push(Violation::PartialTransition {
                            state: self.names[q].clone(),
                            color: self.alphabet.name(Color(c as u32)).to_string(),
                        })
                    }
                    _ => {}
                }
            }
        }
        report
    }

    pub fn build(self) -> Result<Dfa, GameError> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(GameError::InvalidDfa(report));
        }
        let delta = self
            .delta
            .iter()
            .map(|t| t.or(self.default_sink).expect("validated"))
            .collect();
        Ok(Dfa {
            alphabet: self.alphabet,
            names: self.names,
            initial: self.initial,
            accepting: self.accepting,
            delta,
        })
    }
}

/// See [`DfaBuilder::validate`].
pub fn validate_dfa(dfa: &DfaBuilder) -> ValidationReport {
    dfa.validate()
}

/// A DFA with total transition function whose initial state is rejecting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    names: Vec<String>,
    initial: StateId,
    accepting: Vec<bool>,
    delta: Vec<StateId>,
}

impl Dfa {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.names.len() as u32).map(StateId)
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q.index()]
    }

    pub fn accepting_states(&self) -> Vec<StateId> {
        self.states().filter(|&q| self.is_accepting(q)).collect()
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.names[q.index()]
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| StateId(i as u32))
    }

    pub fn delta(&self, q: StateId, c: Color) -> StateId {
        self.delta[q.index() * self.alphabet.len() + c.index()]
    }

    /// `δ*(word)`, with `δ*(ε) = q_I`.
    pub fn run(&self, word: &[Color]) -> Result<StateId, GameError> {
        let mut q = self.initial;
        for &c in word {
            if c.index() >= self.alphabet.len() {
                return Err(GameError::UnknownColor(format!("#{}", c.0)));
            }
            q = self.delta(q, c);
        }
        Ok(q)
    }

    /// Runs on color names.
    pub fn run_named(&self, word: &[&str]) -> Result<StateId, GameError> {
        let colors = word
            .iter()
            .map(|s| {
                self.alphabet
                    .get(s)
                    .ok_or_else(|| GameError::UnknownColor(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.run(&colors)
    }

    pub fn accepts(&self, word: &[Color]) -> Result<bool, GameError> {
        Ok(self.is_accepting(self.run(word)?))
    }

    /// Rebuilds an equivalent builder, e.g. for serialization.
    pub fn to_builder(&self) -> DfaBuilder {
        let mut b = DfaBuilder::new(self.alphabet.clone());
        for q in self.states() {
            b.state(self.state_name(q), self.is_accepting(q));
        }
        b.initial(self.initial);
        for q in self.states() {
            for c in self.alphabet.colors() {
                b.transition(q, c, self.delta(q, c));
            }
        }
        b
    }
}
