use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use amrkit::augment::{alignment_lines, augment_corpus, enumerate_orderings, parse_alignments};
use amrkit::corpus::{write_corpus, CorpusReader};
use amrkit::ensemble::{
    candidate_sets, compare_parsers, ensemble_corpus, ensemble_csv, oracle_select, select_at,
    ScoringOptions,
};
use amrkit::metrics::{buckets_to_csv, fine_grained, length_buckets, pair_by_id};
use amrkit::postprocess::{
    build_wiki_table, prune, repair_or_default, wikify_with_threshold, WikiTable,
};
use amrkit::seq::pos::read_pos_file;
use amrkit::seq::{
    anonymize, build_vocab, encode, pos_annotate, restore_tree, text_to_tree, tree_to_text,
    TrainerConfig, Vocab,
};
use amrkit::{corpus_smatch, to_triples, Document, ParseError};
use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::json;

use crate::args::{Cli, Command, Format, GoldTest, Runs};
use crate::config::PipelineConfig;
use crate::io::{self, display, read_corpus, read_text, required, write_all};
use crate::{UsageError, ValidationFailed};

struct Ctx {
    config: PipelineConfig,
    seed: Option<u64>,
    restarts: Option<usize>,
    format: Format,
    output: Option<PathBuf>,
}

impl Ctx {
    fn out(&self) -> Option<&Path> {
        self.output.as_deref()
    }

    fn restarts(&self) -> Result<usize> {
        let r = self.restarts.unwrap_or(self.config.restarts);
        if r == 0 {
            return Err(UsageError("--restarts must be at least 1".into()).into());
        }
        Ok(r)
    }

    fn scoring(&self, command: &str) -> Result<ScoringOptions> {
        let seed = self.seed.or(self.config.seed).ok_or_else(|| {
            UsageError(format!(
                "--seed is required for `{command}` (or set `seed` in the config)"
            ))
        })?;
        Ok(ScoringOptions::new(seed).with_restarts(self.restarts()?))
    }

    /// Rejects formats a command has no rendering for.
    fn formats(&self, command: &str, allowed: &[Format]) -> Result<Format> {
        if allowed.contains(&self.format) {
            Ok(self.format)
        } else {
            Err(UsageError(
                format!("--format {:?} is not supported by `{command}`", self.format)
                    .to_lowercase(),
            )
            .into())
        }
    }

    fn json(&self, value: &impl Serialize) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        write_all(self.out(), &text)
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let config = match &cli.config {
        Some(path) => PipelineConfig::load(path)?,
        None => PipelineConfig::default(),
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(UsageError("--jobs must be at least 1".into()).into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("starting worker threads")?;
    }
    let ctx = Ctx {
        config,
        seed: cli.seed,
        restarts: cli.restarts,
        format: cli.format,
        output: cli.output,
    };
    use Format::*;
    match cli.command {
        Command::Validate(input) => {
            ctx.formats("validate", &[Text, Json])?;
            validate(&ctx, input.input.as_deref())
        }
        Command::Triples(input) => {
            ctx.formats("triples", &[Text, Json])?;
            triples(&ctx, input.input.as_deref())
        }
        Command::Anonymize { input, per_line } => {
            ctx.formats("anonymize", &[Text])?;
            anonymize_cmd(&ctx, input.input.as_deref(), per_line)
        }
        Command::Restore { input, per_line } => {
            ctx.formats("restore", &[Text])?;
            restore_cmd(&ctx, input.input.as_deref(), per_line)
        }
        Command::Augment { corpus, alignments } => {
            ctx.formats("augment", &[Text])?;
            let paths = &ctx.config.paths;
            let corpus = required(corpus.corpus, paths.corpus.as_ref(), "corpus")?;
            let alignments = required(alignments, paths.alignments.as_ref(), "alignments")?;
            augment(&ctx, &corpus, &alignments)
        }
        Command::Orderings { input, cap } => {
            ctx.formats("orderings", &[Text])?;
            let cap = cap.unwrap_or(ctx.config.cap);
            if cap == 0 {
                return Err(UsageError("--cap must be at least 1".into()).into());
            }
            orderings(&ctx, input.input.as_deref(), cap)
        }
        Command::Prune(input) => {
            ctx.formats("prune", &[Text])?;
            prune_cmd(&ctx, input.input.as_deref())
        }
        Command::Repair(input) => {
            ctx.formats("repair", &[Text])?;
            repair_cmd(&ctx, input.input.as_deref())
        }
        Command::Wikify {
            corpus,
            table,
            threshold,
        } => {
            ctx.formats("wikify", &[Text])?;
            let paths = &ctx.config.paths;
            let corpus = required(corpus.corpus, paths.corpus.as_ref(), "corpus")?;
            let table = required(table, paths.wiki_table.as_ref(), "table")?;
            let threshold = threshold.unwrap_or(ctx.config.threshold);
            if !(0.0..=1.0).contains(&threshold) {
                return Err(
                    UsageError(format!("--threshold {threshold} is outside [0, 1]")).into(),
                );
            }
            wikify_cmd(&ctx, &corpus, &table, threshold)
        }
        Command::BuildWikiTable { gold } => {
            ctx.formats("build-wiki-table", &[Text])?;
            let table = build_wiki_table(&read_corpus(&gold)?);
            write_all(ctx.out(), &table.to_file_text())
        }
        Command::Smatch(pair) => smatch_cmd(&ctx, &pair),
        Command::Evaluate(pair) => evaluate(&ctx, &pair),
        Command::LengthReport { pair, edges } => {
            let edges = if edges.is_empty() {
                ctx.config.bucket_edges.clone()
            } else {
                edges
            };
            length_report(&ctx, &pair, &edges)
        }
        Command::Ensemble { runs, report } => ensemble(&ctx, &runs, report.as_deref()),
        Command::Oracle { gold, runs } => oracle(&ctx, &gold, &runs),
        Command::Compare { gold, runs } => compare(&ctx, &gold, &runs),
        Command::Encode { input, vocab } => {
            ctx.formats("encode", &[Text, Json])?;
            encode_cmd(&ctx, input.input.as_deref(), &vocab)
        }
        Command::BuildVocab { corpus, pos } => {
            ctx.formats("build-vocab", &[Text])?;
            let corpus = required(corpus.corpus, ctx.config.paths.corpus.as_ref(), "corpus")?;
            build_vocab_cmd(
                &ctx,
                &corpus,
                pos.or(ctx.config.paths.pos.clone()).as_deref(),
            )
        }
        Command::PosAnnotate { corpus, pos } => {
            ctx.formats("pos-annotate", &[Text])?;
            let paths = &ctx.config.paths;
            let corpus = required(corpus.corpus, paths.corpus.as_ref(), "corpus")?;
            let pos = required(pos, paths.pos.as_ref(), "pos")?;
            pos_annotate_cmd(&ctx, &corpus, &pos)
        }
        Command::EmitTrainerConfig { base, vocab } => {
            ctx.formats("emit-trainer-config", &[Text, Json])?;
            trainer_config(&ctx, base.as_deref(), vocab.as_deref())
        }
    }
}

fn validate(ctx: &Ctx, input: Option<&Path>) -> Result<()> {
    #[derive(Serialize)]
    struct Problem {
        id: Option<String>,
        line: Option<usize>,
        message: String,
    }
    let name = display(input);
    let mut problems = Vec::new();
    let mut count = 0;
    for item in CorpusReader::new(io::open(input)?) {
        count += 1;
        match item {
            Ok(doc) => problems.extend(doc.graph.validate().into_iter().map(|v| Problem {
                id: Some(doc.id.clone()),
                line: None,
                message: v.to_string(),
            })),
            Err(amrkit::corpus::CorpusError::Block(b)) => problems.push(Problem {
                id: b.id.clone(),
                line: Some(b.line),
                message: b.error.to_string(),
            }),
            Err(e) => return Err(e).with_context(|| format!("reading {name}")),
        }
    }
    if ctx.format == Format::Json {
        ctx.json(&json!({ "documents": count, "problems": problems }))?;
    } else {
        let mut text = String::new();
        for p in &problems {
            let _ = write!(text, "{name}");
            if let Some(line) = p.line {
                let _ = write!(text, ":{line}");
            }
            if let Some(id) = &p.id {
                let _ = write!(text, " ({id})");
            }
            let _ = writeln!(text, ": {}", p.message);
        }
        let _ = writeln!(text, "{count} documents, {} problems", problems.len());
        write_all(ctx.out(), &text)?;
    }
    if !problems.is_empty() {
        return Err(ValidationFailed(format!("{name} has {} problems", problems.len())).into());
    }
    Ok(())
}

fn triples(ctx: &Ctx, input: Option<&Path>) -> Result<()> {
    if ctx.format == Format::Json {
        let docs: Vec<_> = io::documents(input)?
            .map(|d| {
                d.map(|d| {
                    let t: Vec<String> =
                        to_triples(&d.graph).iter().map(|t| t.to_string()).collect();
                    json!({ "id": d.id, "triples": t })
                })
            })
            .collect::<Result<_>>()?;
        return ctx.json(&docs);
    }
    let mut out = io::output(ctx.out())?;
    for doc in io::documents(input)? {
        let doc = doc?;
        writeln!(out, "# ::id {}", doc.id)?;
        for t in to_triples(&doc.graph).iter() {
            writeln!(out, "{t}")?;
        }
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

fn anonymize_cmd(ctx: &Ctx, input: Option<&Path>, per_line: bool) -> Result<()> {
    let mut out = io::output(ctx.out())?;
    for doc in io::documents(input)? {
        let doc = doc?;
        let tree = anonymize(&doc.graph);
        if per_line {
            writeln!(out, "{}", tree_to_text(&tree, false))?;
        } else {
            writeln!(out, "# ::id {}\n# ::snt {}", doc.id, doc.sentence)?;
            writeln!(out, "{}\n", tree_to_text(&tree, true))?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Tree blocks as written by `anonymize`: optional `# ::id` and `# ::snt`
/// lines, then the tree.
struct TreeBlock {
    line: usize,
    id: Option<String>,
    snt: String,
    text: String,
}

fn tree_blocks(text: &str, per_line: bool) -> Vec<TreeBlock> {
    let mut blocks = Vec::new();
    let mut current: Option<TreeBlock> = None;
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            blocks.extend(current.take());
            continue;
        }
        let block = current.get_or_insert_with(|| TreeBlock {
            line: i + 1,
            id: None,
            snt: String::new(),
            text: String::new(),
        });
        if let Some(meta) = trimmed.strip_prefix('#') {
            let meta = meta.trim();
            if let Some(id) = meta.strip_prefix("::id ") {
                block.id = Some(id.trim().to_string());
            } else if let Some(snt) = meta.strip_prefix("::snt") {
                block.snt = snt.trim().to_string();
            }
            continue;
        }
        if !block.text.is_empty() {
            block.text.push('\n');
        }
        block.text.push_str(line);
        if per_line {
            blocks.extend(current.take());
        }
    }
    blocks.extend(current);
    blocks.retain(|b| !b.text.is_empty());
    blocks
}

fn parse_error(name: &str, line: usize, e: ParseError) -> anyhow::Error {
    let line = line + e.pos().map_or(0, |p| p.line - 1);
    anyhow!("{name}:{line}: {e}")
}

fn restore_cmd(ctx: &Ctx, input: Option<&Path>, per_line: bool) -> Result<()> {
    let name = display(input);
    let text = read_text(input)?;
    let docs: Vec<Document> = tree_blocks(&text, per_line)
        .into_iter()
        .enumerate()
        .map(|(i, b)| {
            let tree = text_to_tree(&b.text).map_err(|e| parse_error(&name, b.line, e))?;
            let id = b.id.unwrap_or_else(|| format!("#{}", i + 1));
            Ok(Document::new(id, b.snt, restore_tree(&tree)))
        })
        .collect::<Result<_>>()?;
    write_all(ctx.out(), &write_corpus(&docs, true))
}

fn augment(ctx: &Ctx, corpus: &Path, alignments: &Path) -> Result<()> {
    let docs = read_corpus(corpus)?;
    let text = read_text(Some(alignments))?;
    let lines = alignment_lines(&text);
    if lines.len() != docs.len() {
        bail!(
            "{} has {} alignment lines but {} has {} documents",
            alignments.display(),
            lines.len(),
            corpus.display(),
            docs.len()
        );
    }
    let input = docs
        .into_iter()
        .zip(lines)
        .map(|(doc, line)| {
            let a = parse_alignments(line, &anonymize(&doc.graph))
                .and_then(|a| a.check_bounds(doc.tokens().count()).map(|_| a))
                .with_context(|| format!("{}: alignments of `{}`", alignments.display(), doc.id))?;
            Ok((doc, a))
        })
        .collect::<Result<Vec<_>>>()?;
    write_all(ctx.out(), &write_corpus(&augment_corpus(&input), true))
}

fn orderings(ctx: &Ctx, input: Option<&Path>, cap: usize) -> Result<()> {
    let mut out = io::output(ctx.out())?;
    for doc in io::documents(input)? {
        let doc = doc?;
        writeln!(out, "# ::id {}", doc.id)?;
        for tree in enumerate_orderings(&anonymize(&doc.graph), cap) {
            writeln!(out, "{}", tree_to_text(&tree, false))?;
        }
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

fn prune_cmd(ctx: &Ctx, input: Option<&Path>) -> Result<()> {
    let name = display(input);
    let mut out = io::output(ctx.out())?;
    for block in tree_blocks(&read_text(input)?, true) {
        let tree = text_to_tree(&block.text).map_err(|e| parse_error(&name, block.line, e))?;
        writeln!(out, "{}", tree_to_text(&prune(&tree), false))?;
    }
    out.flush()?;
    Ok(())
}

fn repair_cmd(ctx: &Ctx, input: Option<&Path>) -> Result<()> {
    let mut out = io::output(ctx.out())?;
    let (mut total, mut fallback) = (0, 0);
    for line in read_text(input)?.lines() {
        if line.trim().is_empty() {
            continue;
        }
        total += 1;
        let (tree, repaired) = repair_or_default(line);
        fallback += usize::from(!repaired);
        writeln!(out, "{}", tree_to_text(&tree, false))?;
    }
    out.flush()?;
    if fallback > 0 {
        eprintln!("{fallback} of {total} lines replaced by the default graph");
    }
    Ok(())
}

fn wikify_cmd(ctx: &Ctx, corpus: &Path, table: &Path, threshold: f64) -> Result<()> {
    let table = WikiTable::from_file_text(&read_text(Some(table))?)
        .with_context(|| format!("in {}", table.display()))?;
    let mut out = io::output(ctx.out())?;
    for doc in io::documents(Some(corpus))? {
        let mut doc = doc?;
        doc.graph = wikify_with_threshold(&doc.graph, &table, threshold);
        write!(out, "{}\n\n", doc.to_block(true))?;
    }
    out.flush()?;
    Ok(())
}

fn pair_files(pair: &GoldTest) -> Result<(Vec<Document>, Vec<Document>)> {
    Ok((read_corpus(&pair.gold)?, read_corpus(&pair.test)?))
}

fn smatch_cmd(ctx: &Ctx, pair: &GoldTest) -> Result<()> {
    let opts = ctx.scoring("smatch")?;
    let (gold, test) = pair_files(pair)?;
    let pairs = pair_by_id(&gold, &test)?;
    let (g, t): (Vec<_>, Vec<_>) = pairs
        .iter()
        .map(|(g, t)| (g.graph.clone(), t.graph.clone()))
        .unzip();
    let s = corpus_smatch(&g, &t, opts.restarts, opts.seed)?;
    match ctx.format {
        Format::Text => write_all(
            ctx.out(),
            &format!("P {:.4}\nR {:.4}\nF {:.4}\n", s.precision, s.recall, s.f),
        ),
        Format::Csv => write_all(
            ctx.out(),
            &format!(
                "matched,gold_total,test_total,precision,recall,f\n{},{},{},{:.4},{:.4},{:.4}\n",
                s.matched, s.gold_total, s.test_total, s.precision, s.recall, s.f
            ),
        ),
        Format::Json => ctx.json(&s),
    }
}

fn evaluate(ctx: &Ctx, pair: &GoldTest) -> Result<()> {
    let opts = ctx.scoring("evaluate")?;
    let (gold, test) = pair_files(pair)?;
    let report = fine_grained(&gold, &test, opts.restarts, opts.seed)?;
    match ctx.format {
        Format::Text => {
            let mut text = String::new();
            for c in &report.categories {
                let empty = if c.empty { "  (empty)" } else { "" };
                let _ = writeln!(text, "{:<16}{:.4}{empty}", c.category, c.f);
            }
            write_all(ctx.out(), &text)
        }
        Format::Csv => write_all(ctx.out(), &report.to_csv()),
        Format::Json => ctx.json(&report),
    }
}

fn length_report(ctx: &Ctx, pair: &GoldTest, edges: &[usize]) -> Result<()> {
    let opts = ctx.scoring("length-report")?;
    let (gold, test) = pair_files(pair)?;
    let rows = length_buckets(&gold, &test, edges, opts.restarts, opts.seed)?;
    match ctx.format {
        Format::Text => {
            let mut text = format!("{:>8} {:>6} {:>7}\n", "max_len", "count", "f");
            for r in &rows {
                let f = r
                    .score
                    .map(|s| format!("{:.4}", s.f))
                    .unwrap_or_else(|| "-".into());
                let _ = writeln!(text, "{:>8} {:>6} {:>7}", r.max_len, r.count, f);
            }
            write_all(ctx.out(), &text)
        }
        Format::Csv => write_all(ctx.out(), &buckets_to_csv(&rows)),
        Format::Json => ctx.json(&rows),
    }
}

/// Runs from `--run` flags, falling back to the config.
fn load_runs(ctx: &Ctx, runs: &Runs) -> Result<Vec<(String, Vec<Document>)>> {
    let specs = if runs.runs.is_empty() {
        &ctx.config.paths.runs
    } else {
        &runs.runs
    };
    if specs.is_empty() {
        return Err(UsageError("at least one --run is required".into()).into());
    }
    specs
        .iter()
        .map(|spec| {
            let (name, path) = match spec.split_once('=') {
                Some((name, path)) => (name.to_string(), PathBuf::from(path)),
                None => {
                    let path = PathBuf::from(spec);
                    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned());
                    (stem.unwrap_or_else(|| spec.clone()), path)
                }
            };
            Ok((name, read_corpus(&path)?))
        })
        .collect()
}

fn ensemble(ctx: &Ctx, runs: &Runs, report: Option<&Path>) -> Result<()> {
    let opts = ctx.scoring("ensemble")?;
    let format = ctx.formats("ensemble", &[Format::Text, Format::Csv, Format::Json])?;
    let runs = load_runs(ctx, runs)?;
    let (docs, rows) = ensemble_corpus(&runs, opts)?;
    write_all(ctx.out(), &write_corpus(&docs, true))?;
    if let Some(report) = report {
        let text = match format {
            Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
            _ => ensemble_csv(&rows),
        };
        write_all(Some(report), &text)?;
    }
    Ok(())
}

fn oracle(ctx: &Ctx, gold: &Path, runs: &Runs) -> Result<()> {
    #[derive(Serialize)]
    struct Row {
        id: String,
        oracle: String,
        oracle_f: f64,
        selected: String,
        selected_f: f64,
    }
    let opts = ctx.scoring("oracle")?;
    let gold_docs = read_corpus(gold)?;
    let runs = load_runs(ctx, runs)?;
    let sets = candidate_sets(&runs)?;
    let by_id: HashMap<&str, &Document> = gold_docs.iter().map(|d| (d.id.as_str(), d)).collect();
    if let Some(d) = gold_docs
        .iter()
        .find(|d| !sets.iter().any(|s| s.id == d.id))
    {
        bail!("gold document `{}` has no candidates", d.id);
    }
    let rows: Vec<Row> = sets
        .iter()
        .enumerate()
        .map(|(d, set)| {
            let g = by_id
                .get(set.id.as_str())
                .ok_or_else(|| anyhow!("document `{}` is not in {}", set.id, gold.display()))?;
            let choice = oracle_select(set, &g.graph, opts, d as u64);
            let selected = select_at(set, opts, d as u64).index;
            Ok(Row {
                id: set.id.clone(),
                oracle: set.candidates[choice.index].parser.clone(),
                oracle_f: choice.f,
                selected: set.candidates[selected].parser.clone(),
                selected_f: choice.scores[selected],
            })
        })
        .collect::<Result<_>>()?;
    let mean = |f: fn(&Row) -> f64| {
        if rows.is_empty() {
            0.0
        } else {
            rows.iter().map(f).sum::<f64>() / rows.len() as f64
        }
    };
    let (oracle_mean, selected_mean) = (mean(|r| r.oracle_f), mean(|r| r.selected_f));
    match ctx.format {
        Format::Json => ctx.json(&json!({
            "docs": rows,
            "mean_oracle_f": oracle_mean,
            "mean_selected_f": selected_mean,
        })),
        format => {
            let mut text = String::from("id,oracle,oracle_f,selected,selected_f\n");
            for r in &rows {
                let _ = writeln!(
                    text,
                    "{},{},{:.4},{},{:.4}",
                    r.id, r.oracle, r.oracle_f, r.selected, r.selected_f
                );
            }
            if format == Format::Text {
                let _ = writeln!(text, "mean,,{oracle_mean:.4},,{selected_mean:.4}");
            }
            write_all(ctx.out(), &text)
        }
    }
}

fn compare(ctx: &Ctx, gold: &Path, runs: &Runs) -> Result<()> {
    let opts = ctx.scoring("compare")?;
    let gold = read_corpus(gold)?;
    let runs = load_runs(ctx, runs)?;
    let cmp = compare_parsers(&gold, &runs, opts)?;
    match ctx.format {
        Format::Text => write_all(
            ctx.out(),
            &format!("{}\n{}", cmp.to_csv(), cmp.summary_csv()),
        ),
        Format::Csv => write_all(ctx.out(), &cmp.to_csv()),
        Format::Json => ctx.json(&cmp),
    }
}

fn load_vocab(path: &Path) -> Result<Vocab> {
    Vocab::from_file_text(&read_text(Some(path))?).with_context(|| format!("in {}", path.display()))
}

fn encode_cmd(ctx: &Ctx, input: Option<&Path>, vocab: &Path) -> Result<()> {
    let vocab = load_vocab(vocab)?;
    let text = read_text(input)?;
    let seqs: Vec<_> = text.lines().map(|l| encode(l, &vocab)).collect();
    let unknown: usize = seqs.iter().map(|s| s.unknown).sum();
    if unknown > 0 {
        eprintln!("{unknown} characters mapped to the unknown token");
    }
    if ctx.format == Format::Json {
        let ids: Vec<&[u32]> = seqs.iter().map(|s| s.ids.as_slice()).collect();
        return ctx.json(&ids);
    }
    let mut out = String::new();
    for s in &seqs {
        let ids: Vec<String> = s.ids.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", ids.join(" "));
    }
    write_all(ctx.out(), &out)
}

fn pos_tags(path: &Path) -> Result<Vec<Vec<(String, String)>>> {
    read_pos_file(&read_text(Some(path))?).with_context(|| format!("in {}", path.display()))
}

fn build_vocab_cmd(ctx: &Ctx, corpus: &Path, pos: Option<&Path>) -> Result<()> {
    let docs = read_corpus(corpus)?;
    let mut tags: Vec<String> = match pos {
        Some(p) => pos_tags(p)?
            .into_iter()
            .flatten()
            .map(|(_, tag)| tag)
            .collect(),
        None => Vec::new(),
    };
    tags.sort();
    tags.dedup();
    let vocab = build_vocab(&docs, &tags);
    if !vocab.in_expected_range() {
        eprintln!("vocabulary has {} tokens", vocab.len());
    }
    write_all(ctx.out(), &vocab.to_file_text())
}

fn pos_annotate_cmd(ctx: &Ctx, corpus: &Path, pos: &Path) -> Result<()> {
    let docs = read_corpus(corpus)?;
    let tags = pos_tags(pos)?;
    if tags.len() != docs.len() {
        bail!(
            "{} has {} sentences but {} has {} documents",
            pos.display(),
            tags.len(),
            corpus.display(),
            docs.len()
        );
    }
    let mut out = String::new();
    for (doc, tags) in docs.iter().zip(&tags) {
        let line =
            pos_annotate(&doc.sentence, tags).with_context(|| format!("document `{}`", doc.id))?;
        let _ = writeln!(out, "{line}");
    }
    write_all(ctx.out(), &out)
}

fn trainer_config(ctx: &Ctx, base: Option<&Path>, vocab: Option<&Path>) -> Result<()> {
    let mut config = match base {
        Some(p) => read_text(Some(p))?
            .parse::<TrainerConfig>()
            .with_context(|| format!("in {}", p.display()))?,
        None => TrainerConfig::default(),
    };
    if let Some(v) = vocab {
        config = config.with_vocabulary_size(load_vocab(v)?.len() as u32);
    }
    config.validate()?;
    match ctx.format {
        Format::Json => ctx.json(&config),
        _ => write_all(ctx.out(), &config.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_carry_metadata() {
        let blocks = tree_blocks(
            "# ::id a\n# ::snt A cell\n(cell\n  :mod (x))\n\n\n(dog)\n",
            false,
        );
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].id.as_deref(), Some("a"));
        assert_eq!(blocks[0].snt, "A cell");
        assert_eq!(blocks[0].text, "(cell\n  :mod (x))");
        assert_eq!(blocks[1].line, 7);
        assert_eq!(blocks[1].id, None);
    }

    #[test]
    fn per_line_splits_every_line() {
        let blocks = tree_blocks("(a)\n(b)\n\n(c)\n", true);
        let texts: Vec<&str> = blocks.iter().map(|b| b.text.as_str()).collect();
        assert_eq!(texts, ["(a)", "(b)", "(c)"]);
        assert_eq!(blocks[2].line, 4);
    }
}
