use emoculture::genprob::{
    compare_all, evaluate_hypotheses, load_records, write_comparison_csv, HypothesisReport, Winner, WordClassMap,
};
use emoculture::ScenarioComparisonF64;
use serde::Serialize;
use serde_json::json;

use crate::args::LogprobArgs;
use crate::config::{existing, existing_opt, FileConfig};
use crate::error::{CliError, Result};
use crate::output::{path_string, Output};

#[derive(Serialize)]
struct LogprobDoc<'a> {
    scenarios: &'a [ScenarioComparisonF64],
    hypotheses: &'a HypothesisReport,
}

fn print_scenario(cmp: &ScenarioComparisonF64, classes: &WordClassMap) {
    println!("scenario {}", cmp.scenario_id);
    for (language, context) in &cmp.contexts {
        println!("  [{language}] {context}");
    }
    let mut header = format!("  {:<14}", "word");
    for language in &cmp.languages {
        header.push_str(&format!("{language:>12}"));
    }
    println!("{header}   winner");
    for word in classes.column_order(cmp.words()) {
        let mut line = format!("  {word:<14}");
        let winner = &cmp.winners[&word];
        for language in &cmp.languages {
            let cell = cmp.cell(&word, language).expect("complete table");
            let mark = if winner.includes(language) { "*" } else { " " };
            line.push_str(&format!("{:>11.3}{mark}", cell.score));
        }
        let verdict = match winner {
            Winner::Language(l) => l.clone(),
            Winner::Tie(ls) => format!("tie ({})", ls.join(", ")),
        };
        println!("{line}   {verdict}");
    }
}

pub fn run(args: LogprobArgs, config: FileConfig) -> Result<()> {
    let cfg = config.logprob;
    let records_path = existing(args.records.or(cfg.records), "records")?;
    let classes_path = existing_opt(args.word_classes.or(cfg.word_classes), "word-classes")?;
    let expectation = match (args.expect, cfg.expect) {
        (Some(e), _) => e,
        (None, Some(text)) => text
            .parse()
            .map_err(|e: emoculture::genprob::GenprobError| CliError::validation(e.to_string()))?,
        (None, None) => Default::default(),
    };
    let mode = args.score_mode.or(cfg.score_mode).unwrap_or_default();
    let mut output = Output::new(args.common.out.or(config.out), args.common.format.or(config.format));

    let classes = match &classes_path {
        Some(path) => WordClassMap::load(path)?,
        None => WordClassMap::default(),
    };
    let records = load_records(&records_path)?;
    for record in &records {
        record.validate(&classes)?;
    }
    let comparisons = compare_all(&records, mode)?;
    let report = evaluate_hypotheses(&comparisons, &expectation, &classes)?;

    let settings = json!({
        "command": "logprob",
        "records": path_string(&records_path),
        "word_classes": classes_path.as_deref().map(path_string).unwrap_or_else(|| "builtin".into()),
        "expect": expectation,
        "score_mode": mode,
    });

    for cmp in &comparisons {
        print_scenario(cmp, &classes);
    }
    println!(
        "pride words most likely in `{}` in {}/{} scenarios; shame words most likely in `{}` in {}/{}",
        expectation.pride,
        report.pride_supported_count,
        report.n_scenarios,
        expectation.shame,
        report.shame_supported_count,
        report.n_scenarios
    );
    println!("verdict: {}", report.verdict);

    output.json(
        "logprob",
        &settings,
        &LogprobDoc {
            scenarios: &comparisons,
            hypotheses: &report,
        },
    )?;
    output.csv("logprob", &settings, |buf| {
        write_comparison_csv(&comparisons, &classes, buf)
    })?;
    super::report_written(&output);
    Ok(())
}
