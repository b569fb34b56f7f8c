//! Statement registry, corpus generation, suite runner and counterexample
//! search.

pub mod corpus;
pub mod facts;
pub mod statements;
pub mod suite;

pub use corpus::{
    bimodule_list, closed_patterns, fixture_patterns, generate_corpus, lower_triangular, Corpus,
    CorpusBudget, CorpusEntry, CorpusManifest, EntryManifest, Family, Instance,
};
pub use facts::{
    entry_facts, probe_modules, EntryFacts, Fact, Fast, ModuleFacts, Oracle, Reference, RingFacts,
};
pub use statements::{evaluate, Claim, Evaluation, Shape, StatementId, Verdict};
pub use suite::{
    check_statement, division_ring_probe, run_suite, search_counterexample, CheckOutcome,
    SearchHit, SearchResult, StatementSummary, SuiteOptions, SuiteReport,
};
