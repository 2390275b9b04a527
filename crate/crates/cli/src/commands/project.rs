use emoculture::circumplex::{build_anchors, merge_anchors, AnchorLexicon, AnchorSource, AxisAnchors, Projector};
use emoculture::corpus::{load_embeddings, load_lexicon, EmbeddingSet};
use serde::Serialize;
use serde_json::json;

use crate::args::ProjectArgs;
use crate::config::{existing, existing_opt, FileConfig};
use crate::error::{CliError, Result};
use crate::output::{compact, path_string, Output};
use crate::svg::{scatter, ScatterPoint};

#[derive(Serialize)]
struct Plane {
    model_id: String,
    language: String,
    cos_theta: f64,
    anchors_from: AnchorSource,
}

#[derive(Serialize)]
struct Point {
    model_id: String,
    language: String,
    lemma: String,
    valence: f64,
    arousal: f64,
}

#[derive(Serialize)]
struct ProjectionDoc {
    planes: Vec<Plane>,
    points: Vec<Point>,
}

/// `None` projects every lemma; an empty string projects nothing.
fn parse_labels(flag: Option<String>, config: Option<Vec<String>>) -> Option<Vec<String>> {
    match flag {
        Some(text) => Some(
            text.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect(),
        ),
        None => config,
    }
}

pub fn run(args: ProjectArgs, config: FileConfig) -> Result<()> {
    let cfg = config.project;
    let lexicon_path = existing(args.common.lexicon.or(config.lexicon), "lexicon")?;
    let embedding_paths = if args.embeddings.is_empty() {
        cfg.embeddings.unwrap_or_default()
    } else {
        args.embeddings
    };
    if embedding_paths.is_empty() {
        return Err(CliError::validation("missing required --embeddings"));
    }
    let embedding_paths = embedding_paths
        .into_iter()
        .map(|p| existing(Some(p), "embeddings"))
        .collect::<Result<Vec<_>>>()?;
    let anchors_path = existing_opt(args.anchors.or(cfg.anchors), "anchors")?;
    let labels = parse_labels(args.labels, cfg.labels);
    let merge = args.merge_anchors || cfg.merge_anchors.unwrap_or(false);
    let mut output = Output::new(args.common.out.or(config.out), args.common.format.or(config.format));

    let anchor_lexicon = match &anchors_path {
        Some(path) => AnchorLexicon::load(path)?,
        None => AnchorLexicon::default(),
    };
    let lexicon = load_lexicon(&lexicon_path)?;
    let sets = embedding_paths
        .iter()
        .map(|p| load_embeddings::<f64>(p, &lexicon))
        .collect::<std::result::Result<Vec<EmbeddingSet<f64>>, _>>()?;
    let own: Vec<AxisAnchors<f64>> = sets
        .iter()
        .map(|s| build_anchors(s, &anchor_lexicon))
        .collect::<std::result::Result<_, _>>()?;
    let anchors: Vec<AxisAnchors<f64>> = if merge {
        let merged = merge_anchors(&own)?;
        vec![merged; sets.len()]
    } else {
        own
    };

    let settings = json!({
        "command": "project",
        "lexicon": path_string(&lexicon_path),
        "embeddings": embedding_paths.iter().map(|p| path_string(p)).collect::<Vec<_>>(),
        "anchors": anchors_path.as_deref().map(path_string).unwrap_or_else(|| "builtin".into()),
        "anchor_lemmas": anchor_lexicon,
        "merge_anchors": merge,
        "labels": labels,
        "scale": "positive anchor at 1 on its own axis",
    });

    let mut planes = Vec::with_capacity(sets.len());
    let mut points = Vec::new();
    for ((set, anchor), path) in sets.iter().zip(&anchors).zip(&embedding_paths) {
        let projector = Projector::new(anchor)?;
        planes.push(Plane {
            model_id: set.model_id().to_string(),
            language: set.language().to_string(),
            cos_theta: projector.cos_theta(),
            anchors_from: anchor.source.clone(),
        });
        let chosen: Vec<String> = match &labels {
            Some(list) => list.clone(),
            None => set.lemmas().map(str::to_string).collect(),
        };
        for lemma in chosen {
            let x = set
                .get(&lemma)
                .ok_or_else(|| CliError::validation(format!("label `{lemma}` has no vector in {}", path.display())))?;
            let p = projector.project(x)?;
            points.push(Point {
                model_id: set.model_id().to_string(),
                language: set.language().to_string(),
                lemma,
                valence: p.valence,
                arousal: p.arousal,
            });
        }
    }

    for plane in &planes {
        println!(
            "{}/{}: cos(theta) = {:.6}, anchors from {}",
            plane.model_id,
            plane.language,
            plane.cos_theta,
            plane.anchors_from.languages.join("+")
        );
    }
    for p in &points {
        println!(
            "  {:<16} {:>10.6} {:>10.6}  ({}/{})",
            p.lemma, p.valence, p.arousal, p.model_id, p.language
        );
    }

    let doc = ProjectionDoc { planes, points };
    output.json("projection", &settings, &doc)?;
    output.csv("projection", &settings, |buf| {
        let mut w = csv::Writer::from_writer(buf);
        w.write_record(["model_id", "language", "lemma", "valence", "arousal"])?;
        for p in &doc.points {
            w.write_record([
                p.model_id.as_str(),
                &p.language,
                &p.lemma,
                &p.valence.to_string(),
                &p.arousal.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    })?;
    let scatter_points: Vec<ScatterPoint> = doc
        .points
        .iter()
        .map(|p| ScatterPoint {
            label: p.lemma.clone(),
            language: p.language.clone(),
            model_id: p.model_id.clone(),
            valence: p.valence,
            arousal: p.arousal,
        })
        .collect();
    output.svg(
        "projection",
        &scatter("Valence-arousal projection", &compact(&settings), &scatter_points),
    )?;
    super::report_written(&output);
    Ok(())
}
