use std::sync::Arc;

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tapsilou_core::{
    phase1_table, phase2_table, verify_duality, DualityReport, GameSession, MeasurementOutcome,
    Phase, ProbabilityProfile, Round, SessionConfig, SweepReport,
};

use crate::error::ApiError;
use crate::store::SessionStore;

pub type AppState = Arc<SessionStore>;

type ApiResult<T> = Result<T, ApiError>;

/// JSON shape of a session as seen by clients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SessionView {
    pub id: String,
    pub n: u32,
    pub phase: Phase,
    pub pending_k: Option<u32>,
    pub pending_l: Option<u32>,
    pub bet: u64,
    pub bet_adjustable: bool,
    pub tosser_bankroll: u64,
    pub gambler_bankroll: u64,
    pub history: Vec<Round>,
    pub seed: u64,
    /// Whether the dual-basis pairing exists for this order.
    pub duality_applicable: bool,
    /// Present once both moves of the current round are in.
    pub profile: Option<ProbabilityProfile>,
}

impl From<&GameSession> for SessionView {
    fn from(s: &GameSession) -> Self {
        Self {
            id: s.id().to_string(),
            n: s.n(),
            phase: s.phase(),
            pending_k: s.pending_k(),
            pending_l: s.pending_l(),
            bet: s.bet(),
            bet_adjustable: s.bet_adjustable(),
            tosser_bankroll: s.tosser_bankroll(),
            gambler_bankroll: s.gambler_bankroll(),
            history: s.history().to_vec(),
            seed: s.rng_seed(),
            duality_applicable: s.n().is_multiple_of(2),
            profile: s.pending_profile(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MeasureView {
    pub outcome: MeasurementOutcome,
    #[serde(flatten)]
    pub session: SessionView,
}

#[derive(Debug, Deserialize)]
pub struct CreateSession {
    pub n: u32,
    pub bet: u64,
    pub tosser_bankroll: u64,
    pub gambler_bankroll: u64,
    pub seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
pub struct TosserMove {
    pub k: u32,
    /// Bet for this round; may only differ from the current bet after a draw.
    pub bet: Option<u64>,
}

#[derive(Debug, Deserialize)]
pub struct GamblerMove {
    pub l: u32,
}

#[derive(Debug, Deserialize)]
pub struct OrderQuery {
    pub n: u32,
}

#[derive(Debug, Deserialize)]
pub struct Phase2Query {
    pub n: u32,
    pub k: u32,
}

#[derive(Debug, Serialize)]
struct Health {
    status: &'static str,
    sessions: usize,
}

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> ApiResult<T> {
    payload
        .map(|Json(v)| v)
        .map_err(|e| ApiError::invalid(e.body_text()))
}

fn query<T>(q: Result<Query<T>, QueryRejection>) -> ApiResult<T> {
    q.map(|Query(v)| v).map_err(|e| ApiError::invalid(e.body_text()))
}

pub fn routes() -> Router<AppState> {
    Router::new()
        .route("/api/health", get(health))
        .route("/api/sessions", post(create_session))
        .route("/api/sessions/{id}", get(get_session))
        .route("/api/sessions/{id}/tosser-move", post(tosser_move))
        .route("/api/sessions/{id}/gambler-move", post(gambler_move))
        .route("/api/sessions/{id}/measure", post(measure))
        .route("/api/analysis/phase1", get(analysis_phase1))
        .route("/api/analysis/phase2", get(analysis_phase2))
        .route("/api/verify/duality", get(duality))
}

async fn health(State(store): State<AppState>) -> Json<Health> {
    Json(Health {
        status: "ok",
        sessions: store.len(),
    })
}

async fn create_session(
    State(store): State<AppState>,
    payload: Result<Json<CreateSession>, JsonRejection>,
) -> ApiResult<(StatusCode, Json<SessionView>)> {
    let req = body(payload)?;
    let config = SessionConfig {
        n: req.n,
        bet: req.bet,
        tosser_bankroll: req.tosser_bankroll,
        gambler_bankroll: req.gambler_bankroll,
        seed: req.seed.unwrap_or_else(rand::random),
    };
    let session = GameSession::new(uuid::Uuid::new_v4().simple().to_string(), config)?;
    let session = store.insert(session)?;
    tracing::info!(id = session.id(), n = session.n(), "session created");
    Ok((StatusCode::CREATED, Json(SessionView::from(&session))))
}

async fn get_session(
    State(store): State<AppState>,
    Path(id): Path<String>,
) -> ApiResult<Json<SessionView>> {
    Ok(Json(SessionView::from(&store.get(&id)?)))
}

async fn tosser_move(
    State(store): State<AppState>,
    Path(id): Path<String>,
    payload: Result<Json<TosserMove>, JsonRejection>,
) -> ApiResult<Json<SessionView>> {
    let req = body(payload)?;
    let ((), session) = store.update(&id, |s| {
        if let Some(bet) = req.bet {
            if bet != s.bet() {
                s.set_bet(bet)?;
            }
        }
        s.submit_tosser_move(req.k)?;
        Ok(())
    })?;
    Ok(Json(SessionView::from(&session)))
}

async fn gambler_move(
    State(store): State<AppState>,
    Path(id): Path<String>,
    payload: Result<Json<GamblerMove>, JsonRejection>,
) -> ApiResult<Json<SessionView>> {
    let req = body(payload)?;
    let ((), session) = store.update(&id, |s| Ok(s.submit_gambler_move(req.l)?))?;
    Ok(Json(SessionView::from(&session)))
}

async fn measure(
    State(store): State<AppState>,
    Path(id): Path<String>,
) -> ApiResult<Json<MeasureView>> {
    let (outcome, session) = store.update(&id, |s| Ok(s.resolve()?))?;
    tracing::info!(id = %id, ?outcome, "round measured");
    Ok(Json(MeasureView {
        outcome,
        session: SessionView::from(&session),
    }))
}

async fn analysis_phase1(q: Result<Query<OrderQuery>, QueryRejection>) -> ApiResult<Json<SweepReport>> {
    let q = query(q)?;
    Ok(Json(phase1_table(q.n)?))
}

async fn analysis_phase2(q: Result<Query<Phase2Query>, QueryRejection>) -> ApiResult<Json<SweepReport>> {
    let q = query(q)?;
    Ok(Json(phase2_table(q.n, q.k)?))
}

async fn duality(q: Result<Query<OrderQuery>, QueryRejection>) -> ApiResult<Json<DualityReport>> {
    let q = query(q)?;
    Ok(Json(verify_duality(q.n)?))
}
