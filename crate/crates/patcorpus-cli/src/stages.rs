//! Pipeline stage implementations behind the subcommands.
//!
//! Every stage reads its inputs from the corpus root left by the previous
//! stage and writes its own outputs there, so stages can be re-run
//! individually. Per-pair work runs on a rayon pool; each pair owns its
//! output files, so results are byte-identical regardless of thread count.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::anyhow;
use log::{debug, info, warn};
use rayon::prelude::*;

use patcorpus::align::{
    align_dict, align_mt, AlignMethod, BilingualLexicon, DictParams, MtParams,
};
use patcorpus::corpusio::{
    extract_subcorpus, extraction_rate, ipc_union, read_alignment, read_lexicon, read_pair_text,
    read_pairs, read_translations, write_alignment, write_format_version, write_ipc,
    write_pair_text, write_pairs, yearly_stats, CorpusLayout, PairRow, RateInput, SubcorpusFilter,
};
use patcorpus::family::{pair_documents, RouteLabel};
use patcorpus::fixtures;
use patcorpus::ingest::{parse_docdb_file, parse_jpo_file, parse_uspto_file, IngestOptions};
use patcorpus::segment::{segment_document, tokenize_en, tokenize_ja, NonbreakingPrefixes, Part, Side};

use crate::config::{self, AlignConfig};
use crate::store::Store;
use crate::{
    AlignArgs, CmdResult, DocalignArgs, ExtractArgs, Failure, FixtureArgs, Mode, ParseArgs,
    RunArgs, SegmentArgs, StatsArgs,
};

pub fn parse(args: &ParseArgs) -> CmdResult {
    let start = Instant::now();
    require_dir("jpo", &args.jpo)?;
    require_dir("uspto", &args.uspto)?;
    require_dir("docdb", &args.docdb)?;
    let opts = IngestOptions { shift_jis: args.shift_jis, ..IngestOptions::default() };
    let mut warnings = 0u64;
    let jp = parse_office("jpo", &args.jpo, &opts, parse_jpo_file, &mut warnings)?;
    let us = parse_office("uspto", &args.uspto, &opts, parse_uspto_file, &mut warnings)?;
    let db = parse_office("docdb", &args.docdb, &opts, parse_docdb_file, &mut warnings)?;
    let store = Store::new(&args.out);
    store.write_jp(&jp).map_err(Failure::env)?;
    store.write_us(&us).map_err(Failure::env)?;
    store.write_docdb(&db).map_err(Failure::env)?;
    info!(
        "stage=parse event=done jp_docs={} us_docs={} docdb_records={} warnings={warnings} elapsed_ms={}",
        jp.len(),
        us.len(),
        db.len(),
        start.elapsed().as_millis()
    );
    check_warnings("parse", warnings, args.max_warnings)
}

pub fn docalign(args: &DocalignArgs) -> CmdResult {
    let start = Instant::now();
    let store = Store::new(&args.out);
    let jp = store.read_jp().map_err(Failure::env)?;
    let us = store.read_us().map_err(Failure::env)?;
    let db = store.read_docdb().map_err(Failure::env)?;
    info!(
        "stage=docalign event=loaded jp_docs={} us_docs={} docdb_records={}",
        jp.len(),
        us.len(),
        db.len()
    );
    let (pairs, warnings) = pair_documents(&jp, &us, &db);
    for msg in warnings.messages() {
        warn!("stage=docalign event=warning msg={msg:?}");
    }
    for route in RouteLabel::ALL {
        let n = pairs.iter().filter(|p| p.route == route).count();
        info!("stage=docalign event=route route={route} pairs={n}");
    }
    let layout = CorpusLayout::new(args.out.clone());
    let rows: Vec<PairRow> = pairs.iter().map(PairRow::from).collect();
    write_pairs(&layout, &rows).map_err(classify)?;
    let ipc: Vec<(String, BTreeSet<String>)> = pairs
        .iter()
        .map(|p| {
            let codes = ipc_union(&jp[p.jp_index].ipc_codes, &us[p.us_index].ipc_codes);
            (p.pair_id.clone(), codes)
        })
        .collect();
    write_ipc(&layout, &ipc).map_err(classify)?;
    write_format_version(&layout).map_err(classify)?;
    store.write_pairs(&pairs).map_err(Failure::env)?;
    info!(
        "stage=docalign event=done pairs={} warnings={} elapsed_ms={}",
        pairs.len(),
        warnings.count(),
        start.elapsed().as_millis()
    );
    check_warnings("docalign", warnings.count() as u64, args.max_warnings)
}

pub fn segment(args: &SegmentArgs) -> CmdResult {
    let start = Instant::now();
    let store = Store::new(&args.out);
    let jp = store.read_jp().map_err(Failure::env)?;
    let us = store.read_us().map_err(Failure::env)?;
    let pairs = store.read_pairs().map_err(Failure::env)?;
    let layout = CorpusLayout::new(args.out.clone()).with_gzip(args.gzip);
    let prefixes = NonbreakingPrefixes::default_en();
    let pool = thread_pool(args.threads)?;
    let (ja_total, en_total) = pool
        .install(|| {
            pairs
                .par_iter()
                .map(|pair| -> patcorpus::Result<(u64, u64)> {
                    let jp_doc = stored_doc(&jp, pair.jp_index, &pair.pair_id, "jp")?;
                    let us_doc = stored_doc(&us, pair.us_index, &pair.pair_id, "us")?;
                    let ja = segment_document(&pair.pair_id, jp_doc, Side::Ja, prefixes);
                    let en = segment_document(&pair.pair_id, us_doc, Side::En, prefixes);
                    write_pair_text(&layout, &pair.pair_id, &ja, &en)?;
                    debug!(
                        "stage=segment event=pair pair_id={} ja_sents={} en_sents={}",
                        pair.pair_id,
                        ja.len(),
                        en.len()
                    );
                    Ok((ja.len() as u64, en.len() as u64))
                })
                .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))
        })
        .map_err(classify)?;
    info!(
        "stage=segment event=done pairs={} ja_sents={ja_total} en_sents={en_total} elapsed_ms={}",
        pairs.len(),
        start.elapsed().as_millis()
    );
    Ok(())
}

pub fn align(args: &AlignArgs) -> CmdResult {
    let start = Instant::now();
    let cfg = AlignConfig::load(args.config.as_deref()).map_err(Failure::env)?;

    enum Prepared {
        Dict(BilingualLexicon, DictParams),
        Mt(BTreeMap<String, Vec<String>>, MtParams),
    }

    // Validate flags, parameters, and resource files before touching the
    // corpus, so usage errors surface regardless of corpus state.
    let mut warnings = 0u64;
    let prepared = match args.mode {
        Mode::Dict => {
            let path = args
                .lexicon
                .as_deref()
                .ok_or_else(|| Failure::env(anyhow!("--mode dict requires --lexicon")))?;
            let params = cfg.dict_params().map_err(Failure::env)?;
            let (lexicon, warns) = read_lexicon(path).map_err(classify)?;
            for msg in warns.messages() {
                warn!("stage=align event=warning msg={msg:?}");
            }
            warnings += warns.count() as u64;
            info!("stage=align event=lexicon entries={}", lexicon.entry_count());
            Prepared::Dict(lexicon, params)
        }
        Mode::Mt => {
            let path = args
                .translations
                .as_deref()
                .ok_or_else(|| Failure::env(anyhow!("--mode mt requires --translations")))?;
            let params = cfg.mt_params().map_err(Failure::env)?;
            let (translations, warns) = read_translations(path).map_err(classify)?;
            for msg in warns.messages() {
                warn!("stage=align event=warning msg={msg:?}");
            }
            warnings += warns.count() as u64;
            info!("stage=align event=translations sentences={}", translations.len());
            Prepared::Mt(translations, params)
        }
    };

    let store = Store::new(&args.out);
    let pairs = store.read_pairs().map_err(Failure::env)?;
    let layout = CorpusLayout::new(args.out.clone()).with_gzip(args.gzip);
    let pool = thread_pool(args.threads)?;
    let (links_total, missing_total) = pool
        .install(|| {
            pairs
                .par_iter()
                .map(|pair| -> patcorpus::Result<(u64, u64)> {
                    let ja = read_pair_text(&layout.ja_text_path(&pair.pair_id))?;
                    let en = read_pair_text(&layout.en_text_path(&pair.pair_id))?;
                    let en_tokens: Vec<Vec<String>> =
                        en.iter().map(|r| tokenize_en(&r.text)).collect();
                    let mut missing = 0u64;
                    let mut links = match &prepared {
                        Prepared::Dict(lexicon, params) => {
                            let ja_tokens: Vec<Vec<String>> =
                                ja.iter().map(|r| tokenize_ja(&r.text, lexicon)).collect();
                            align_dict(&ja_tokens, &en_tokens, lexicon, params)
                        }
                        Prepared::Mt(translations, params) => {
                            // A sentence without a translation gets an empty
                            // token list: it can never anchor, but the pair
                            // still aligns around it.
                            let trans: Vec<Vec<String>> = ja
                                .iter()
                                .map(|r| {
                                    translations.get(&r.sentence_id).cloned().unwrap_or_else(|| {
                                        missing += 1;
                                        Vec::new()
                                    })
                                })
                                .collect();
                            if missing > 0 {
                                warn!(
                                    "stage=align event=missing_translations pair_id={} count={missing}",
                                    pair.pair_id
                                );
                            }
                            align_mt(ja.len(), &trans, &en_tokens, params)?
                        }
                    };
                    if let Some(min) = args.min_score {
                        links.retain(|l| l.score >= min);
                    }
                    write_alignment(&layout, &pair.pair_id, &links, args.paper_compat)?;
                    debug!(
                        "stage=align event=pair pair_id={} links={}",
                        pair.pair_id,
                        links.len()
                    );
                    Ok((links.len() as u64, missing))
                })
                .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))
        })
        .map_err(classify)?;
    warnings += missing_total;
    info!(
        "stage=align event=done mode={} pairs={} links={links_total} warnings={warnings} elapsed_ms={}",
        args.mode.as_str(),
        pairs.len(),
        start.elapsed().as_millis()
    );
    check_warnings("align", warnings, args.max_warnings)
}

pub fn stats(args: &StatsArgs) -> CmdResult {
    let start = Instant::now();
    let layout = CorpusLayout::new(args.out.clone());
    let rows = read_pairs(&layout.pairs_path()).map_err(classify)?;
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    let mut inputs = Vec::with_capacity(rows.len());
    let mut warnings = 0u64;
    for row in &rows {
        let ja = read_pair_text(&layout.ja_text_path(&row.pair_id)).map_err(classify)?;
        let en = read_pair_text(&layout.en_text_path(&row.pair_id)).map_err(classify)?;
        // The link counts don't depend on the method tag, so any value works
        // for reading.
        let links = match read_alignment(&layout.alignment_path(&row.pair_id), AlignMethod::Dict) {
            Ok(links) => links,
            Err(e) => {
                warn!(
                    "stage=stats event=unreadable_alignment pair_id={} error={:?}",
                    row.pair_id,
                    format!("{e}")
                );
                warnings += 1;
                Vec::new()
            }
        };
        counts.insert(row.pair_id.clone(), links.len() as u64);
        inputs.push(RateInput::from_links(row.route, ja.len() as u64, en.len() as u64, &links));
    }
    let yearly = yearly_stats(&rows, &counts);
    let report = extraction_rate(&inputs);
    let stats_dir = args.out.join("stats");
    fs::create_dir_all(&stats_dir)
        .map_err(|e| Failure::env(anyhow!("cannot create {}: {e}", stats_dir.display())))?;
    write_file(stats_dir.join("yearly.tsv"), yearly.to_tsv())?;
    write_file(stats_dir.join("extraction.tsv"), report.to_tsv())?;
    let mut stdout = io::stdout().lock();
    stdout
        .write_all(format!("{}\n{}", yearly.to_table(), report.to_tsv()).as_bytes())
        .map_err(|e| Failure::env(anyhow::Error::from(e)))?;
    info!(
        "stage=stats event=done pairs={} warnings={warnings} elapsed_ms={}",
        rows.len(),
        start.elapsed().as_millis()
    );
    check_warnings("stats", warnings, args.max_warnings)
}

pub fn fixture(args: &FixtureArgs) -> CmdResult {
    let start = Instant::now();
    let spec = config::load_fixture_spec(args.config.as_deref(), args.seed).map_err(Failure::env)?;
    let summary = fixtures::generate(&spec, &args.out).map_err(classify)?;
    info!(
        "stage=fixture event=done seed={} elapsed_ms={}",
        spec.seed,
        start.elapsed().as_millis()
    );
    let line = format!(
        "pairs={} decoys={} ja_sentences={} en_sentences={} gold_links={} lexicon_entries={}\n",
        summary.pairs,
        summary.decoys,
        summary.ja_sentences,
        summary.en_sentences,
        summary.gold_links,
        summary.lexicon_entries
    );
    io::stdout()
        .write_all(line.as_bytes())
        .map_err(|e| Failure::env(anyhow::Error::from(e)))
}

pub fn extract(args: &ExtractArgs) -> CmdResult {
    let start = Instant::now();
    let layout = CorpusLayout::new(args.out.clone());
    let part = args
        .part
        .as_deref()
        .map(str::parse::<Part>)
        .transpose()
        .map_err(Failure::env)?;
    let route = args
        .route
        .as_deref()
        .map(str::parse::<RouteLabel>)
        .transpose()
        .map_err(Failure::env)?;
    let year_range = match (args.year_from, args.year_to) {
        (None, None) => None,
        (from, to) => Some((from.unwrap_or(i32::MIN), to.unwrap_or(i32::MAX))),
    };
    let filter = SubcorpusFilter {
        part,
        ipc_prefix: args.ipc_prefix.clone(),
        year_range,
        route,
    };
    let summary = match &args.dest {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| Failure::env(anyhow!("cannot write {}: {e}", path.display())))?;
            let mut writer = BufWriter::new(file);
            let summary = extract_subcorpus(&layout, &filter, &mut writer).map_err(classify)?;
            writer
                .flush()
                .map_err(|e| Failure::env(anyhow!("cannot write {}: {e}", path.display())))?;
            summary
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            extract_subcorpus(&layout, &filter, &mut lock).map_err(classify)?
        }
    };
    info!(
        "stage=extract event=done pairs_scanned={} pairs_matched={} lines={} elapsed_ms={}",
        summary.pairs_scanned,
        summary.pairs_matched,
        summary.lines,
        start.elapsed().as_millis()
    );
    Ok(())
}

pub fn run(args: &RunArgs) -> CmdResult {
    let start = Instant::now();
    parse(&ParseArgs {
        jpo: args.jpo.clone(),
        uspto: args.uspto.clone(),
        docdb: args.docdb.clone(),
        out: args.out.clone(),
        shift_jis: args.shift_jis,
        max_warnings: args.max_warnings,
    })?;
    docalign(&DocalignArgs { out: args.out.clone(), max_warnings: args.max_warnings })?;
    segment(&SegmentArgs { out: args.out.clone(), threads: args.threads, gzip: args.gzip })?;
    align(&AlignArgs {
        out: args.out.clone(),
        mode: args.mode,
        lexicon: args.lexicon.clone(),
        translations: args.translations.clone(),
        min_score: args.min_score,
        paper_compat: args.paper_compat,
        threads: args.threads,
        gzip: args.gzip,
        config: args.config.clone(),
        max_warnings: args.max_warnings,
    })?;
    stats(&StatsArgs { out: args.out.clone(), max_warnings: args.max_warnings })?;
    info!("stage=run event=done elapsed_ms={}", start.elapsed().as_millis());
    Ok(())
}

/// Sort data problems from environment problems: unreadable paths, broken
/// configs, and bad parameters point at the invocation (exit 2), while
/// malformed content discovered mid-run is a data failure (exit 1).
fn classify(e: patcorpus::Error) -> Failure {
    use patcorpus::Error::*;
    match &e {
        Io { .. } | Json(_) | InvalidSpec(_) | InvalidParam(_) => Failure::env(e),
        _ => Failure::data(e),
    }
}

fn require_dir(flag: &str, dir: &Path) -> CmdResult {
    if dir.is_dir() {
        Ok(())
    } else {
        Err(Failure::env(anyhow!(
            "--{flag}: input directory not found: {}",
            dir.display()
        )))
    }
}

/// XML inputs under a directory (`.xml` or `.xml.gz`), sorted by name so
/// record order never depends on directory iteration order.
fn xml_files(dir: &Path) -> CmdResult<Vec<PathBuf>> {
    let entries = fs::read_dir(dir)
        .map_err(|e| Failure::env(anyhow!("cannot list {}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Failure::env(anyhow!("cannot list {}: {e}", dir.display())))?;
        let path = entry.path();
        let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("");
        if path.is_file() && (name.ends_with(".xml") || name.ends_with(".xml.gz")) {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn parse_office<T>(
    office: &str,
    dir: &Path,
    opts: &IngestOptions,
    parse_file: impl Fn(&Path, &IngestOptions) -> patcorpus::Result<Vec<T>>,
    warnings: &mut u64,
) -> CmdResult<Vec<T>> {
    let files = xml_files(dir)?;
    let mut records = Vec::new();
    for path in &files {
        match parse_file(path, opts) {
            Ok(mut batch) => {
                debug!(
                    "stage=parse event=file office={office} file={} records={}",
                    path.display(),
                    batch.len()
                );
                records.append(&mut batch);
            }
            Err(e) => {
                warn!(
                    "stage=parse event=skipped_file office={office} file={} error={:?}",
                    path.display(),
                    format!("{e}")
                );
                *warnings += 1;
            }
        }
    }
    info!(
        "stage=parse event=office_done office={office} files={} records={}",
        files.len(),
        records.len()
    );
    Ok(records)
}

fn stored_doc<'a, T>(
    docs: &'a [T],
    index: usize,
    pair_id: &str,
    side: &str,
) -> patcorpus::Result<&'a T> {
    docs.get(index).ok_or_else(|| {
        patcorpus::Error::InvariantViolation(format!(
            "pair {pair_id} references {side} record {index} outside the store"
        ))
    })
}

fn thread_pool(threads: usize) -> CmdResult<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if threads > 0 {
        builder = builder.num_threads(threads);
    }
    builder
        .build()
        .map_err(|e| Failure::env(anyhow!("cannot build thread pool: {e}")))
}

fn check_warnings(stage: &str, count: u64, max: u64) -> CmdResult {
    if count > max {
        Err(Failure::data(anyhow!(
            "{stage}: {count} data warnings exceed --max-warnings {max}"
        )))
    } else {
        Ok(())
    }
}

fn write_file(path: PathBuf, text: String) -> CmdResult {
    fs::write(&path, text)
        .map_err(|e| Failure::env(anyhow!("cannot write {}: {e}", path.display())))
}
