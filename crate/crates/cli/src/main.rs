//! `privrec` — audit photo-album privacy, categorize users, and recommend
//! tighten-only disclosure settings from the command line.
//!
//! Exit codes: 0 on success, 1 on input or processing errors (diagnostic on
//! stderr), 2 on usage errors.

mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use privrec_core::audit::{audit_albums, render_report};
use privrec_core::categorize::{
    export_tree, label_dataset, rule_label, train_decision_tree, DecisionTree, TreeConfig,
};
use privrec_core::evaluation::five_by_two_cv;
use privrec_core::ingest::{
    self, labeled_profiles_csv, missing_value_stats, parse_albums_file, parse_profiles,
    top_interests, Dataset, NormalizationDictionary,
};
use privrec_core::profile::Attribute;
use privrec_core::recommend::{
    recommend_all, recommend_disclosure, render_recommendations, DistanceConfig, DistanceMode,
    Policy,
};
use privrec_core::synth::{generate_population, SynthConfig};

use output::{AuditUserReport, LabelRow, RecommendReport, StatsReport, SynthSummary};

#[derive(Parser)]
#[command(
    name = "privrec",
    version,
    about = "Photo-album privacy auditing and tighten-only disclosure recommendations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report weakly protected photo albums per user
    Audit(AuditArgs),
    /// Append the rule-based privacy category to each profile
    Label(LabelArgs),
    /// Train or inspect the privacy-category decision tree
    Tree(TreeArgs),
    /// Per-attribute tighten-only disclosure advice for one user
    Recommend(RecommendArgs),
    /// 5x2 cross-validation of the disclosure predictor
    Evaluate(EvaluateArgs),
    /// Generate a synthetic population
    Synth(SynthArgs),
    /// Dataset statistics: missing values and top interests
    Stats(StatsArgs),
}

#[derive(Args)]
struct DataArgs {
    /// Profiles CSV file
    #[arg(long)]
    profiles: PathBuf,
    /// Interests CSV file
    #[arg(long)]
    interests: PathBuf,
    /// Albums CSV file
    #[arg(long)]
    albums: PathBuf,
    /// Normalization dictionary JSON (defaults to the built-in dictionary)
    #[arg(long)]
    dict: Option<PathBuf>,
}

impl DataArgs {
    fn dictionary(&self) -> Result<NormalizationDictionary> {
        match &self.dict {
            Some(path) => Ok(NormalizationDictionary::from_json_file(path)?),
            None => Ok(NormalizationDictionary::default()),
        }
    }

    fn load(&self) -> Result<Dataset> {
        let dictionary = self.dictionary()?;
        Ok(parse_profiles(
            &self.profiles,
            &self.interests,
            &self.albums,
            &dictionary,
        )?)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutputArgs {
    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text)
                .with_context(|| format!("failed to write {}", path.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn emit_json<T: serde::Serialize>(&self, value: &T) -> Result<()> {
        let mut json = serde_json::to_string_pretty(value)?;
        json.push('\n');
        self.emit(&json)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Binary,
    Mixed,
}

impl ModeArg {
    fn to_mode(self) -> DistanceMode {
        match self {
            ModeArg::Binary => DistanceMode::BinaryDisclosure,
            ModeArg::Mixed => DistanceMode::MixedCloseness,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    Majority,
    Strict,
}

impl PolicyArg {
    fn to_policy(self) -> Policy {
        match self {
            PolicyArg::Majority => Policy::Majority,
            PolicyArg::Strict => Policy::Strict,
        }
    }
}

#[derive(Args)]
struct AuditArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Audit a single user instead of every user
    #[arg(long)]
    user: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct LabelArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct TreeArgs {
    #[command(subcommand)]
    action: TreeAction,
}

#[derive(Subcommand)]
enum TreeAction {
    /// Train on the rule-labeled dataset
    Train(TreeTrainArgs),
    /// Render a previously trained tree
    Show(TreeShowArgs),
}

#[derive(Args)]
struct TreeTrainArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Maximum tree depth
    #[arg(long)]
    max_depth: Option<usize>,
    /// Minimum samples per non-empty child
    #[arg(long, default_value_t = 2)]
    min_leaf: usize,
    /// Number of top interest topics used as features
    #[arg(long, default_value_t = 25)]
    top_interests: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct TreeShowArgs {
    /// Tree JSON produced by `tree train --format json`
    #[arg(long)]
    tree: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct RecommendArgs {
    #[command(flatten)]
    data: DataArgs,
    /// The user asking for advice
    #[arg(long)]
    user: String,
    /// Recommend for one attribute only (default: all attributes)
    #[arg(long)]
    target: Option<Attribute>,
    /// Neighborhood size
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Conflict resolution when neighbors disagree
    #[arg(long, value_enum, default_value = "majority")]
    policy: PolicyArg,
    /// Distance mode
    #[arg(long, value_enum, default_value = "binary")]
    mode: ModeArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct EvaluateArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Attribute whose disclosure is predicted
    #[arg(long)]
    target: Attribute,
    /// Neighborhood size
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Distance mode
    #[arg(long, value_enum, default_value = "binary")]
    mode: ModeArg,
    /// Cross-validation shuffle seed
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SynthArgs {
    /// Generator configuration JSON (defaults are built in)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Generator seed (overrides the config)
    #[arg(long)]
    seed: u64,
    /// Number of users (overrides the config)
    #[arg(long)]
    n: Option<usize>,
    /// Directory receiving profiles.csv, interests.csv, albums.csv
    #[arg(long)]
    out: PathBuf,
    /// Output format of the generation summary
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    data: DataArgs,
    /// How many top interests to report
    #[arg(long, default_value_t = 25)]
    top: usize,
    #[command(flatten)]
    output: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Audit(args) => run_audit(args),
        Command::Label(args) => run_label(args),
        Command::Tree(args) => match args.action {
            TreeAction::Train(train) => run_tree_train(train),
            TreeAction::Show(show) => run_tree_show(show),
        },
        Command::Recommend(args) => run_recommend(args),
        Command::Evaluate(args) => run_evaluate(args),
        Command::Synth(args) => run_synth(args),
        Command::Stats(args) => run_stats(args),
    }
}

fn run_audit(args: AuditArgs) -> Result<()> {
    let dataset = args.data.load()?;
    let albums = parse_albums_file(&args.data.albums)?;
    let selected: Vec<&privrec_core::profile::UserVector> = match &args.user {
        Some(id) => {
            let user = dataset
                .find_user(id)
                .with_context(|| format!("user `{id}` not found in the dataset"))?;
            vec![user]
        }
        None => dataset.users.iter().collect(),
    };

    let reports: Vec<AuditUserReport> = selected
        .iter()
        .map(|user| {
            let own: Vec<privrec_core::profile::PhotoAlbum> = albums
                .iter()
                .filter(|(id, _)| id == user.user_id())
                .map(|(_, album)| album.clone())
                .collect();
            AuditUserReport {
                user_id: user.user_id().to_string(),
                display_name: user
                    .profile
                    .name
                    .clone()
                    .unwrap_or_else(|| user.user_id().to_string()),
                findings: audit_albums(&own),
            }
        })
        .collect();

    match args.output.format {
        Format::Json => args.output.emit_json(&reports),
        Format::Text => {
            let mut text = String::new();
            for report in &reports {
                text.push_str(&render_report(&report.findings, &report.display_name));
                text.push('\n');
            }
            args.output.emit(&text)
        }
    }
}

fn run_label(args: LabelArgs) -> Result<()> {
    let dataset = args.data.load()?;
    let labels: Vec<_> = dataset
        .users
        .iter()
        .map(|u| rule_label(&u.album_summary))
        .collect();
    match args.output.format {
        Format::Json => {
            let rows: Vec<LabelRow> = dataset
                .users
                .iter()
                .zip(&labels)
                .map(|(user, category)| LabelRow {
                    user_id: user.user_id().to_string(),
                    category: *category,
                })
                .collect();
            args.output.emit_json(&rows)
        }
        Format::Text => args.output.emit(&labeled_profiles_csv(&dataset, &labels)?),
    }
}

fn run_tree_train(args: TreeTrainArgs) -> Result<()> {
    let dataset = args.data.load()?;
    let labeled = label_dataset(&dataset);
    let config = TreeConfig {
        max_depth: args.max_depth,
        min_leaf: args.min_leaf,
        top_interest_features: args.top_interests,
        reference_year: dataset.metadata.reference_year,
    };
    let tree = train_decision_tree(&labeled, &config)?;
    match args.output.format {
        Format::Json => args.output.emit_json(&tree),
        Format::Text => args.output.emit(&export_tree(&tree)),
    }
}

fn run_tree_show(args: TreeShowArgs) -> Result<()> {
    let text = fs::read_to_string(&args.tree)
        .with_context(|| format!("failed to read {}", args.tree.display()))?;
    let tree: DecisionTree = serde_json::from_str(&text)
        .with_context(|| format!("{} is not a tree JSON file", args.tree.display()))?;
    match args.output.format {
        Format::Json => args.output.emit_json(&tree),
        Format::Text => args.output.emit(&export_tree(&tree)),
    }
}

fn run_recommend(args: RecommendArgs) -> Result<()> {
    let dataset = args.data.load()?;
    let query = dataset
        .find_user(&args.user)
        .with_context(|| format!("user `{}` not found in the dataset", args.user))?
        .clone();
    let cfg = DistanceConfig::for_dataset(args.mode.to_mode(), &dataset);
    let policy = args.policy.to_policy();
    let recommendations = match args.target {
        Some(attribute) => vec![recommend_disclosure(
            &query,
            &dataset,
            attribute,
            args.k,
            policy,
            &cfg,
        )?],
        None => recommend_all(&query, &dataset, &Attribute::ALL, args.k, policy, &cfg)?,
    };
    let report = RecommendReport {
        user_id: args.user.clone(),
        k: args.k,
        policy,
        mode: args.mode.to_mode(),
        recommendations,
    };
    match args.output.format {
        Format::Json => args.output.emit_json(&report),
        Format::Text => args
            .output
            .emit(&render_recommendations(&report.recommendations, &args.user)),
    }
}

fn run_evaluate(args: EvaluateArgs) -> Result<()> {
    let dataset = args.data.load()?;
    let cfg = DistanceConfig::for_dataset(args.mode.to_mode(), &dataset);
    let result = five_by_two_cv(&dataset, args.target, args.k, &cfg, args.seed)?;
    match args.output.format {
        Format::Json => args.output.emit_json(&result),
        Format::Text => args.output.emit(&result.render_table()),
    }
}

fn run_synth(args: SynthArgs) -> Result<()> {
    let mut config = match &args.config {
        Some(path) => SynthConfig::from_json_file(path)?,
        None => SynthConfig::default(),
    };
    config.seed = args.seed;
    if let Some(n) = args.n {
        config.n_users = n;
    }
    let dataset = generate_population(&config)?;

    fs::create_dir_all(&args.out)
        .with_context(|| format!("failed to create {}", args.out.display()))?;
    let profiles = args.out.join("profiles.csv");
    let interests = args.out.join("interests.csv");
    let albums = args.out.join("albums.csv");
    ingest::write_dataset_csv(&dataset, &profiles, &interests, &albums)?;

    let summary = SynthSummary {
        n_users: dataset.len(),
        seed: config.seed,
        profiles: path_string(&profiles),
        interests: path_string(&interests),
        albums: path_string(&albums),
    };
    match args.format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&summary)?);
            Ok(())
        }
        Format::Text => {
            println!(
                "wrote {} users (seed {}) to {}, {}, {}",
                summary.n_users, summary.seed, summary.profiles, summary.interests, summary.albums
            );
            Ok(())
        }
    }
}

fn run_stats(args: StatsArgs) -> Result<()> {
    let dataset = args.data.load()?;
    if dataset.is_empty() {
        bail!("dataset is empty");
    }
    let stats = missing_value_stats(&dataset)?;
    let ranking = top_interests(&dataset, args.top);
    match args.output.format {
        Format::Json => args.output.emit_json(&StatsReport::build(&stats, &ranking)),
        Format::Text => {
            let mut text = stats.render_table();
            text.push('\n');
            text.push_str(&format!("Top {} interests\n", args.top));
            text.push_str(&ranking.render_table());
            args.output.emit(&text)
        }
    }
}

fn path_string(path: &Path) -> String {
    path.display().to_string()
}
