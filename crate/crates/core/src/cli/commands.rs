use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::{
    parse_default, parse_relations, require_file, require_shards, Command, ConfusionArgs,
    CorpusFormat, EvaluateArgs, IndexArgs, PipelineArgs, PreprocessArgs, RunConfig, SampleArgs,
    ScoreArgs, StatsArgs, TauArgs, ValidatedRun, VerifyIdsArgs,
};
use crate::cooccur::{build_index_sharded, CooccurrenceIndex, CountMode};
use crate::error::{Error, Result};
use crate::eval::{
    confusion, evaluate_relation, format_report, weighted_summary, EvalOptions, EvalRow,
    ReportFormat, ScoreTable, TauOptions,
};
use crate::facc1::{
    corpus_stats, sample_documents, AnnotationLine, AnnotationReader, DocOrder, FilterSpec,
    PreprocessReport, Preprocessor, SampleMode,
};
use crate::io::{create_writer, open_reader, read_all};
use crate::model::{
    format_presence_report, load_abstracts, load_catalog_dir, load_kb_dir, load_score_table,
    verify_ids, AbstractStore, EntityCatalog, Relation,
};
use crate::strategies::{format_predictions, score_all, ScoringConfig, StrategySelection};

pub(super) fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Preprocess(args) => preprocess(args),
        Command::Index(args) => index(args),
        Command::Score(args) => score(args),
        Command::Evaluate(args) => evaluate(args),
        Command::Confusion(args) => confusion_cmd(args),
        Command::Sample(args) => sample(args),
        Command::VerifyIds(args) => verify(args),
        Command::Stats(args) => stats(args),
        Command::Pipeline(args) => pipeline(args),
    }
}

/// Per-relation file name: `pred.tsv` becomes `pred.profession.tsv` when
/// `per_relation` is set, otherwise the path is used as given.
pub fn relation_path(base: &Path, relation: Relation, per_relation: bool) -> PathBuf {
    if !per_relation {
        return base.to_path_buf();
    }
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}.{relation}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{relation}"),
    };
    base.with_file_name(name)
}

fn content_id(data: &[u8]) -> String {
    let digest = Sha256::digest(data);
    format!("sha256:{}", hex::encode(&digest[..8]))
}

fn write_file(path: &Path, body: &[u8]) -> Result<()> {
    let mut w = create_writer(path)?;
    w.write_all(body)
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))
}

fn emit(out: Option<&Path>, body: &str) -> Result<()> {
    match out {
        Some(path) => write_file(path, body.as_bytes()),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}

fn read_lines(path: &Path, data: &[u8], format: &CorpusFormat) -> Result<Vec<AnnotationLine>> {
    AnnotationReader::new(
        data,
        path.display().to_string(),
        format.separator,
        format.on_parse_error,
    )
    .collect()
}

fn log_preprocess(report: &PreprocessReport) {
    log::info!(
        "read {} lines ({} skipped); {} after entity filter; {} after co-occurrence filter",
        report.lines_read,
        report.skipped,
        report.after_pass1,
        report.after_pass2
    );
}

fn preprocess(args: PreprocessArgs) -> Result<()> {
    require_file(&args.input)?;
    let shards = require_shards(args.shards)?;
    let catalog = load_catalog_dir(&args.catalog_dir)?;
    let spec = FilterSpec::from_catalog(&catalog);
    let processor = Preprocessor {
        spec: &spec,
        separator: args.format.separator,
        policy: args.format.on_parse_error,
        order: if args.sorted {
            DocOrder::Contiguous
        } else {
            DocOrder::Any
        },
    };
    let origin = args.input.display().to_string();
    let report = if shards == 1 && args.sorted {
        let reader = open_reader(&args.input)?;
        let mut writer = create_writer(&args.out)?;
        let report = processor.run_stream(reader, &origin, 1, &mut writer)?;
        writer.flush().map_err(|e| Error::io(&args.out, e))?;
        report
    } else {
        let data = read_all(&args.input)?;
        let (out, report) = processor.run_bytes(&data, &origin, shards)?;
        write_file(&args.out, &out)?;
        report
    };
    log_preprocess(&report);
    Ok(())
}

fn build_from_lines(
    mut lines: Vec<AnnotationLine>,
    spec: &FilterSpec,
    mode: CountMode,
    shards: usize,
    sorted: bool,
    built_from: &str,
) -> Result<CooccurrenceIndex> {
    if !sorted {
        lines.sort_by(|a, b| a.record.doc_id.cmp(&b.record.doc_id));
    }
    build_index_sharded(&lines, spec, mode, shards, built_from)
}

fn index(args: IndexArgs) -> Result<()> {
    require_file(&args.input)?;
    let shards = require_shards(args.shards)?;
    let catalog = load_catalog_dir(&args.catalog_dir)?;
    let spec = FilterSpec::from_catalog(&catalog);
    let data = read_all(&args.input)?;
    let lines = read_lines(&args.input, &data, &args.format)?;
    let mode = if args.doc_level {
        CountMode::Document
    } else {
        CountMode::Annotation
    };
    let index = build_from_lines(lines, &spec, mode, shards, args.sorted, &content_id(&data))?;
    log::info!(
        "indexed {} persons, {} (person, entity) pairs",
        index.persons().count(),
        index.len()
    );
    write_file(&args.out, index.to_tsv().as_bytes())
}

fn load_index(path: &Path) -> Result<CooccurrenceIndex> {
    CooccurrenceIndex::read_tsv(open_reader(path)?, &path.display().to_string())
}

fn write_predictions(
    out: &Path,
    relations: &[Relation],
    per_relation: bool,
    triples: &[crate::strategies::ScoredTriple],
    provenance: bool,
) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for &relation in relations {
        let path = relation_path(out, relation, per_relation);
        let body = format_predictions(
            triples.iter().filter(|t| t.relation == relation),
            provenance,
        );
        write_file(&path, body.as_bytes())?;
        written.push(path);
    }
    Ok(written)
}

fn report_scoring(output: &crate::strategies::ScoringOutput) {
    if !output.warnings.is_empty() {
        log::warn!("{} scoring warnings", output.warnings.len());
        for w in output.warnings.iter().take(20) {
            log::warn!("{w}");
        }
    }
    log::info!(
        "scored {} triples, {} defaulted",
        output.triples.len(),
        output.defaulted()
    );
}

fn score(args: ScoreArgs) -> Result<()> {
    let relations = parse_relations(&args.relation).map_err(Error::Validation)?;
    let config = ScoringConfig {
        default_score: parse_default(args.default_score)?,
        strategy: args.strategy,
    };
    let index_path = match (&args.index, args.strategy) {
        (Some(p), _) => {
            require_file(p)?;
            Some(p)
        }
        (None, StrategySelection::Abstracts) => None,
        (None, _) => {
            return Err(Error::Validation(
                "--index is required unless --strategy abstracts".into(),
            ))
        }
    };
    if args.abstracts.is_none() && args.strategy == StrategySelection::Abstracts {
        return Err(Error::Validation(
            "--abstracts is required with --strategy abstracts".into(),
        ));
    }
    if let Some(p) = &args.abstracts {
        require_file(p)?;
    }

    let catalog = load_catalog_dir(args.catalog_dir.as_deref().unwrap_or(&args.kb_dir))?;
    let kb = load_kb_dir(&args.kb_dir, &catalog)?;
    let abstracts = match &args.abstracts {
        Some(p) => load_abstracts(p, &catalog)?,
        None => AbstractStore::new(),
    };
    let index = index_path.map(|p| load_index(p)).transpose()?;

    let output = score_all(&kb, &catalog, &abstracts, index.as_ref(), &config);
    report_scoring(&output);
    write_predictions(
        &args.out,
        &relations,
        relations.len() > 1,
        &output.triples,
        args.provenance,
    )?;
    Ok(())
}

fn tau_options(args: &TauArgs) -> TauOptions {
    TauOptions {
        variant: args.tau_variant,
        grouping: args.tau_grouping,
        include_singletons: args.include_singletons,
    }
}

fn evaluate_tables(
    tables: &[(Relation, ScoreTable, ScoreTable)],
    options: &EvalOptions,
) -> Result<Vec<EvalRow>> {
    let mut rows = tables
        .iter()
        .map(|(rel, pred, gold)| evaluate_relation(rel.as_str(), pred, gold, options))
        .collect::<Result<Vec<_>>>()?;
    if rows.len() > 1 {
        rows.push(weighted_summary(&rows)?);
    }
    Ok(rows)
}

fn load_tables(
    pred: &Path,
    gold: &Path,
    relations: &[Relation],
) -> Result<Vec<(Relation, ScoreTable, ScoreTable)>> {
    let per_relation = relations.len() > 1;
    relations
        .iter()
        .map(|&rel| {
            let pred_path = relation_path(pred, rel, per_relation);
            let gold_path = relation_path(gold, rel, per_relation);
            require_file(&pred_path)?;
            require_file(&gold_path)?;
            Ok((
                rel,
                load_score_table(&pred_path)?,
                load_score_table(&gold_path)?,
            ))
        })
        .collect()
}

fn evaluate(args: EvaluateArgs) -> Result<()> {
    let relations = parse_relations(&args.relation).map_err(Error::Validation)?;
    let tables = load_tables(&args.pred, &args.gold, &relations)?;
    let options = EvalOptions {
        accuracy_window: args.accuracy_window,
        tau: tau_options(&args.tau),
    };
    let rows = evaluate_tables(&tables, &options)?;
    emit(args.out.as_deref(), &format_report(&rows, args.format))
}

fn confusion_cmd(args: ConfusionArgs) -> Result<()> {
    let relations = parse_relations(&args.relation).map_err(Error::Validation)?;
    let tables = load_tables(&args.pred, &args.gold, &relations)?;
    let per_relation = relations.len() > 1;
    let mut stdout_body = String::new();
    for (rel, pred, gold) in &tables {
        let matrix = confusion(pred, gold)?.to_tsv();
        match &args.out {
            Some(out) => write_file(&relation_path(out, *rel, per_relation), matrix.as_bytes())?,
            None => {
                if per_relation {
                    stdout_body.push_str(&format!("# {rel}\n"));
                }
                stdout_body.push_str(&matrix);
            }
        }
    }
    if args.out.is_none() {
        emit(None, &stdout_body)?;
    }
    Ok(())
}

fn sample(args: SampleArgs) -> Result<()> {
    require_file(&args.input)?;
    let data = read_all(&args.input)?;
    let lines = read_lines(&args.input, &data, &args.format)?;
    let mode = match args.seed {
        Some(seed) => SampleMode::Uniform {
            docs: args.docs,
            seed,
        },
        None => SampleMode::First { docs: args.docs },
    };
    let picked = sample_documents(&lines, mode);
    let mut out = Vec::new();
    for line in &picked {
        out.extend_from_slice(line.raw.as_bytes());
        out.push(b'\n');
    }
    log::info!("sampled {} annotations", picked.len());
    write_file(&args.out, &out)
}

fn verify(args: VerifyIdsArgs) -> Result<()> {
    require_file(&args.input)?;
    let catalog = load_catalog_dir(&args.catalog_dir)?;
    let reader = AnnotationReader::new(
        open_reader(&args.input)?,
        args.input.display().to_string(),
        args.format.separator,
        args.format.on_parse_error,
    );
    let rows = verify_ids(&catalog, reader)?;
    let missing = rows.iter().filter(|r| r.is_missing()).count();
    if missing > 0 {
        log::warn!(
            "{missing} of {} catalog ids never occur in the corpus",
            rows.len()
        );
    }
    emit(args.out.as_deref(), &format_presence_report(&rows))
}

fn stats(args: StatsArgs) -> Result<()> {
    require_file(&args.input)?;
    let reader = AnnotationReader::new(
        open_reader(&args.input)?,
        args.input.display().to_string(),
        args.format.separator,
        args.format.on_parse_error,
    );
    let s = corpus_stats(reader)?;
    emit(
        None,
        &format!(
            "documents\t{}\nannotations\t{}\nannotations_per_document\t{}\n",
            s.documents, s.annotations, s.annotations_per_document
        ),
    )
}

fn pipeline(args: PipelineArgs) -> Result<()> {
    let run = RunConfig::from_file(&args.config)?.validate()?;
    let summary = run_pipeline(&run)?;
    log::info!(
        "pipeline done: {} triples scored, {} defaulted; outputs in {}",
        summary.triples,
        summary.defaulted,
        run.out_dir.display()
    );
    Ok(())
}

/// What [`run_pipeline`] produced.
#[derive(Debug, Clone, Default)]
pub struct PipelineSummary {
    pub preprocess: PreprocessReport,
    pub triples: usize,
    pub defaulted: usize,
    pub eval: Vec<EvalRow>,
    pub outputs: Vec<PathBuf>,
}

/// Runs every stage with the settings of `run`, writing into `run.out_dir`:
/// `filtered.tsv`, `index.tsv`, `pred.<relation>.tsv` and, when the KB
/// directory holds gold scores, `eval.tsv` and `confusion.<relation>.tsv`.
/// Evaluation covers the gold-labelled triples only.
pub fn run_pipeline(run: &ValidatedRun) -> Result<PipelineSummary> {
    let mut summary = PipelineSummary::default();
    let catalog: EntityCatalog = load_catalog_dir(&run.catalog_dir)?;
    let kb = load_kb_dir(&run.kb_dir, &catalog)?;
    let abstracts = match &run.abstracts {
        Some(p) => load_abstracts(p, &catalog)?,
        None => AbstractStore::new(),
    };
    let spec = FilterSpec::from_catalog(&catalog);
    let out_dir = &run.out_dir;

    let origin = run.corpus.display().to_string();
    let corpus = read_all(&run.corpus)?;
    let processor = Preprocessor {
        spec: &spec,
        separator: run.separator,
        policy: run.policy,
        order: DocOrder::Contiguous,
    };
    let (filtered, report) = processor.run_bytes(&corpus, &origin, run.shards)?;
    log_preprocess(&report);
    summary.preprocess = report;
    let filtered_path = out_dir.join("filtered.tsv");
    write_file(&filtered_path, &filtered)?;
    summary.outputs.push(filtered_path.clone());

    let format = CorpusFormat {
        separator: run.separator,
        on_parse_error: run.policy,
    };
    let lines = read_lines(&filtered_path, &filtered, &format)?;
    let mode = if run.doc_level {
        CountMode::Document
    } else {
        CountMode::Annotation
    };
    let index = build_from_lines(lines, &spec, mode, run.shards, true, &content_id(&filtered))?;
    let index_path = out_dir.join("index.tsv");
    write_file(&index_path, index.to_tsv().as_bytes())?;
    summary.outputs.push(index_path);

    let config = ScoringConfig {
        default_score: run.default_score,
        strategy: run.strategy,
    };
    let scored = score_all(&kb, &catalog, &abstracts, Some(&index), &config);
    report_scoring(&scored);
    summary.triples = scored
        .triples
        .iter()
        .filter(|t| run.relations.contains(&t.relation))
        .count();
    summary.defaulted = scored
        .triples
        .iter()
        .filter(|t| t.defaulted && run.relations.contains(&t.relation))
        .count();
    summary.outputs.extend(write_predictions(
        &out_dir.join("pred.tsv"),
        &run.relations,
        true,
        &scored.triples,
        run.provenance,
    )?);

    let mut tables = Vec::new();
    for &relation in Relation::ALL.iter().filter(|r| run.relations.contains(r)) {
        let gold = kb.gold_table(relation);
        if gold.is_empty() {
            continue;
        }
        let pred: ScoreTable = scored
            .triples
            .iter()
            .filter(|t| t.relation == relation)
            .map(|t| ((t.person.clone(), t.value.clone()), t.score))
            .filter(|(k, _)| gold.contains_key(k))
            .collect();
        tables.push((relation, pred, gold));
    }
    if !tables.is_empty() {
        let options = EvalOptions {
            accuracy_window: run.accuracy_window,
            tau: TauOptions::default(),
        };
        summary.eval = evaluate_tables(&tables, &options)?;
        let eval_path = out_dir.join("eval.tsv");
        write_file(
            &eval_path,
            format_report(&summary.eval, ReportFormat::Tsv).as_bytes(),
        )?;
        summary.outputs.push(eval_path);
        for (relation, pred, gold) in &tables {
            let path = relation_path(&out_dir.join("confusion.tsv"), *relation, true);
            write_file(&path, confusion(pred, gold)?.to_tsv().as_bytes())?;
            summary.outputs.push(path);
        }
    }
    Ok(summary)
}
