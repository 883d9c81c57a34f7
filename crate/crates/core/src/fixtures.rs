//! The "Crk binding to CAS" example used throughout the docs and tests.

/// Sentence of the worked example.
pub const CRK_CAS_SENTENCE: &str =
    "Crk binding to CAS is required for the induction of cell migration";

/// The example graph with variables; `c` is re-entrant.
pub const CRK_CAS_PENMAN: &str = r#"(r / require-01
    :ARG0 (i / induce-01
        :ARG1 (c / cell)
        :ARG2 (m / migrate-01
            :ARG0 c))
    :ARG1 (b / bind-01
        :ARG1 (p / protein
            :name (n / name :op1 "Crk"))
        :ARG2 (p2 / protein
            :name (n2 / name :op1 "CAS"))))"#;

/// Variable-free tree form; the re-entrant `cell` is a bare leaf.
pub const CRK_CAS_TREE: &str = r#"(require-01
   :ARG0 (induce-01
      :ARG1 (cell)
      :ARG2 (migrate-01
         :ARG0 cell))
   :ARG1 (bind-01
      :ARG1 (protein
         :name (name :op1 "Crk"))
      :ARG2 (protein
         :name (name :op1 "CAS"))))"#;

/// The same tree with branches ordered to follow the sentence.
pub const CRK_CAS_WORD_ORDER_TREE: &str = r#"(require-01
   :ARG1 (bind-01
      :ARG1 (protein
         :name (name :op1 "Crk"))
      :ARG2 (protein
         :name (name :op1 "CAS")))
   :ARG0 (induce-01
      :ARG1 (cell)
      :ARG2 (migrate-01
         :ARG0 cell)))"#;

/// Alignment of the tree nodes to sentence tokens, in the `start-end|path`
/// format: the bind branch covers tokens 0-3, the induce branch 8-11.
pub const CRK_CAS_ALIGNMENT: &str =
    "5-6| 1-2|1 0-1|1.0+1.0.0+1.0.0.0 3-4|1.1+1.1.0+1.1.0.0 8-9|0 10-11|0.0+0.1.0 11-12|0.1";

/// The example graph with the re-entrancy broken: migrate-01 gets its own
/// `cell` node instead of sharing `c`.
pub const CRK_CAS_SPLIT_PENMAN: &str = r#"(r / require-01
    :ARG0 (i / induce-01
        :ARG1 (c / cell)
        :ARG2 (m / migrate-01
            :ARG0 (c2 / cell)))
    :ARG1 (b / bind-01
        :ARG1 (p / protein
            :name (n / name :op1 "Crk"))
        :ARG2 (p2 / protein
            :name (n2 / name :op1 "CAS"))))"#;
