//! The JSON workspace format.
//!
//! A document is one JSON object with optional sections `algebras`,
//! `lie_algebras`, `actions`, `lie_actions`, `maps`, `post_lts`,
//! `post_lie` and `deformations`, each a map from names to entries.
//! Scalars are integers or strings `"p/q"`. Tensors are lists of
//! `{"args": [i, j, ..], "out": {"l": c}}` with 0-based indices; omitted
//! entries are zero and nothing is completed implicitly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use hlts_core::bridge::{HomLieAlgebra, HomPostLieAlgebra, LieAction};
use hlts_core::deformation::TruncatedDeformation;
use hlts_core::lts::HomLts;
use hlts_core::oop::WeightedOOperator;
use hlts_core::post_lts::HomPostLts;
use hlts_core::rep::Action;
use hlts_core::{format_rational, parse_rational, Matrix, SparseTensor, Q};
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    /// Syntax and scalar errors, located by line and column.
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    /// Unresolved references and shape errors, located by JSON path.
    #[error("{path}: {message}")]
    Semantic { path: String, message: String },
}

fn semantic(path: impl Into<String>, message: impl fmt::Display) -> FormatError {
    FormatError::Semantic {
        path: path.into(),
        message: message.to_string(),
    }
}

/// A rational read from an integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq)]
pub struct Scalar(pub Q);

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match (self.0.is_integer(), self.0.numer().to_i64()) {
            (true, Some(n)) => s.serialize_i64(n),
            _ => s.serialize_str(&format_rational(&self.0)),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct ScalarVisitor;

        impl Visitor<'_> for ScalarVisitor {
            type Value = Scalar;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a rational string \"p/q\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Scalar, E> {
                Ok(Scalar(Q::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Scalar, E> {
                Ok(Scalar(Q::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Scalar, E> {
                Err(E::custom(format!(
                    "malformed rational {v}: floating-point numbers are not accepted, write \"p/q\""
                )))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Scalar, E> {
                parse_rational(v)
                    .map(Scalar)
                    .map_err(|e| E::custom(format!("malformed rational {v:?}: {e}")))
            }
        }

        d.deserialize_any(ScalarVisitor)
    }
}

pub type RawMatrix = Vec<Vec<Scalar>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEntry {
    pub args: Vec<usize>,
    pub out: BTreeMap<usize, Scalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAlgebra {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// Omitted means the identity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<RawMatrix>,
    #[serde(default)]
    pub bracket: Vec<RawEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAction {
    pub algebra: String,
    pub module: String,
    /// `θ(x, y)u` with args `[x, y, u]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<RawEntry>>,
    /// Use `θ(x, y)u = [u, x, y]`; requires `module` equal to `algebra`.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub adjoint: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLieAction {
    pub algebra: String,
    pub module: String,
    /// `ρ(x)u` with args `[x, u]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<RawEntry>>,
    /// Use `ρ(x)u = [x, u]`; requires `module` equal to `algebra`.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub adjoint: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMap {
    /// Name of an entry of `actions` or of `lie_actions`.
    pub action: String,
    pub matrix: RawMatrix,
    #[serde(default = "zero_scalar")]
    pub kappa: Scalar,
}

fn zero_scalar() -> Scalar {
    Scalar(Q::zero())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPostLts {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<RawMatrix>,
    #[serde(default)]
    pub floor: Vec<RawEntry>,
    #[serde(default)]
    pub curly: Vec<RawEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPostLie {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<RawMatrix>,
    #[serde(default)]
    pub bracket: Vec<RawEntry>,
    #[serde(default)]
    pub star: Vec<RawEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDeformation {
    /// Name of an entry of `maps` whose action is a triple-system action.
    pub map: String,
    /// `A_1, .., A_n`.
    pub terms: Vec<RawMatrix>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, RawAlgebra>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub lie_algebras: BTreeMap<String, RawAlgebra>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub actions: BTreeMap<String, RawAction>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub lie_actions: BTreeMap<String, RawLieAction>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, RawMap>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub post_lts: BTreeMap<String, RawPostLts>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub post_lie: BTreeMap<String, RawPostLie>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub deformations: BTreeMap<String, RawDeformation>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ActionEntry {
    pub algebra: String,
    pub module: String,
    pub action: Action,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LieActionEntry {
    pub algebra: String,
    pub module: String,
    pub action: LieAction,
}

/// A weighted O-operator at the triple-system or at the Lie level.
#[derive(Clone, Debug, PartialEq)]
pub enum MapEntry {
    Lts { action: String, op: WeightedOOperator },
    Lie {
        action: String,
        map: Matrix<Q>,
        lie_action: LieAction,
        kappa: Q,
    },
}

impl MapEntry {
    pub fn action_name(&self) -> &str {
        match self {
            MapEntry::Lts { action, .. } | MapEntry::Lie { action, .. } => action,
        }
    }

    pub fn matrix(&self) -> &Matrix<Q> {
        match self {
            MapEntry::Lts { op, .. } => op.map(),
            MapEntry::Lie { map, .. } => map,
        }
    }

    pub fn kappa(&self) -> &Q {
        match self {
            MapEntry::Lts { op, .. } => op.kappa(),
            MapEntry::Lie { kappa, .. } => kappa,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeformationEntry {
    pub map: String,
    pub deformation: TruncatedDeformation,
}

/// A document with every reference resolved and every shape checked.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Workspace {
    pub algebras: BTreeMap<String, HomLts>,
    pub lie_algebras: BTreeMap<String, HomLieAlgebra>,
    pub actions: BTreeMap<String, ActionEntry>,
    pub lie_actions: BTreeMap<String, LieActionEntry>,
    pub maps: BTreeMap<String, MapEntry>,
    pub post_lts: BTreeMap<String, HomPostLts>,
    pub post_lie: BTreeMap<String, HomPostLieAlgebra>,
    pub deformations: BTreeMap<String, DeformationEntry>,
}

/// Fails unless `name` is unused in `map`.
pub fn fresh<T>(map: &BTreeMap<String, T>, name: &str) -> Result<(), FormatError> {
    if map.contains_key(name) {
        Err(semantic(name, "an entry with this name already exists"))
    } else {
        Ok(())
    }
}

impl Workspace {
    /// Inserts `g` under `name` unless an equal algebra is already there.
    pub fn insert_algebra(&mut self, name: &str, g: HomLts) -> Result<(), FormatError> {
        match self.algebras.get(name) {
            Some(old) if *old == g => Ok(()),
            Some(_) => Err(semantic(name, "an algebra with this name already exists with other data")),
            None => {
                self.algebras.insert(name.to_string(), g);
                Ok(())
            }
        }
    }

    /// Inserts an action together with its two algebras.
    pub fn insert_action(&mut self, name: &str, g: &str, h: &str, act: Action) -> Result<(), FormatError> {
        self.insert_algebra(g, act.algebra().clone())?;
        self.insert_algebra(h, act.module().clone())?;
        fresh(&self.actions, name)?;
        self.actions.insert(
            name.to_string(),
            ActionEntry {
                algebra: g.to_string(),
                module: h.to_string(),
                action: act,
            },
        );
        Ok(())
    }

    /// Inserts an operator together with its action and algebras.
    pub fn insert_operator(
        &mut self,
        name: &str,
        action: &str,
        g: &str,
        h: &str,
        op: WeightedOOperator,
    ) -> Result<(), FormatError> {
        self.insert_action(action, g, h, op.action().clone())?;
        fresh(&self.maps, name)?;
        self.maps.insert(
            name.to_string(),
            MapEntry::Lts {
                action: action.to_string(),
                op,
            },
        );
        Ok(())
    }

    /// Inserts a deformation of the operator `map`, which must already be present.
    pub fn insert_deformation(
        &mut self,
        name: &str,
        map: &str,
        deformation: TruncatedDeformation,
    ) -> Result<(), FormatError> {
        match self.maps.get(map) {
            Some(MapEntry::Lts { op, .. }) if op == deformation.op() => {}
            _ => return Err(semantic(name, format!("map {map:?} is not the operator being deformed"))),
        }
        fresh(&self.deformations, name)?;
        self.deformations.insert(
            name.to_string(),
            DeformationEntry {
                map: map.to_string(),
                deformation,
            },
        );
        Ok(())
    }
}

pub fn parse_document(text: &str) -> Result<Document, FormatError> {
    if text.trim().is_empty() {
        return Ok(Document::default());
    }
    Ok(serde_json::from_str(text)?)
}

pub fn parse_workspace(text: &str) -> Result<Workspace, FormatError> {
    resolve(&parse_document(text)?)
}

pub fn print_workspace(ws: &Workspace) -> String {
    let doc = to_document(ws);
    let mut text = serde_json::to_string_pretty(&doc).expect("documents serialize");
    text.push('\n');
    text
}

fn matrix_from_raw(raw: &RawMatrix, rows: usize, cols: usize, path: &str) -> Result<Matrix<Q>, FormatError> {
    if raw.len() != rows || raw.iter().any(|r| r.len() != cols) {
        return Err(semantic(path, format!("expected a {rows}x{cols} matrix")));
    }
    let data = raw.iter().map(|r| r.iter().map(|s| s.0.clone()).collect()).collect();
    Ok(Matrix::from_rows(data, cols))
}

fn twist_from_raw(raw: &Option<RawMatrix>, dim: usize, path: &str) -> Result<Matrix<Q>, FormatError> {
    match raw {
        Some(m) => matrix_from_raw(m, dim, dim, path),
        None => Ok(Matrix::identity(dim)),
    }
}

fn matrix_to_raw(m: &Matrix<Q>) -> RawMatrix {
    (0..m.rows())
        .map(|i| m.row(i).iter().cloned().map(Scalar).collect())
        .collect()
}

pub fn tensor_from_raw(
    entries: &[RawEntry],
    dims_in: Vec<usize>,
    dim_out: usize,
    path: &str,
) -> Result<SparseTensor, FormatError> {
    let mut t = SparseTensor::zero(dims_in.clone(), dim_out);
    let mut seen = BTreeSet::new();
    for (n, e) in entries.iter().enumerate() {
        let at = format!("{path}[{n}]");
        if e.args.len() != dims_in.len() {
            return Err(semantic(
                at,
                format!("expected {} argument indices, found {}", dims_in.len(), e.args.len()),
            ));
        }
        if let Some((k, &i)) = e.args.iter().enumerate().find(|&(k, &i)| i >= dims_in[k]) {
            return Err(semantic(
                at,
                format!("argument {k} is {i}, outside dimension {}", dims_in[k]),
            ));
        }
        for (&l, c) in &e.out {
            if l >= dim_out {
                return Err(semantic(&at, format!("output index {l} outside dimension {dim_out}")));
            }
            if !seen.insert((e.args.clone(), l)) {
                return Err(semantic(
                    &at,
                    format!("duplicate entry for args {:?}, output {l}", e.args),
                ));
            }
            t.add_entry(&e.args, l, c.0.clone())
                .map_err(|err| semantic(&at, err))?;
        }
    }
    Ok(t)
}

/// Entries grouped by argument tuple, zero values dropped.
pub fn tensor_to_raw(t: &SparseTensor) -> Vec<RawEntry> {
    let mut grouped: BTreeMap<Vec<usize>, BTreeMap<usize, Scalar>> = BTreeMap::new();
    for (key, c) in t.entries() {
        if c.is_zero() {
            continue;
        }
        let (args, out) = key.split_at(key.len() - 1);
        grouped
            .entry(args.to_vec())
            .or_default()
            .insert(out[0], Scalar(c.clone()));
    }
    grouped
        .into_iter()
        .map(|(args, out)| RawEntry { args, out })
        .collect()
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, name: &str, what: &str, path: &str) -> Result<&'a T, FormatError> {
    map.get(name)
        .ok_or_else(|| semantic(path, format!("unknown {what} {name:?}")))
}

fn resolve_lts(name: &str, raw: &RawAlgebra) -> Result<HomLts, FormatError> {
    let path = format!("algebras.{name}");
    let n = raw.dim;
    let alpha = twist_from_raw(&raw.alpha, n, &format!("{path}.alpha"))?;
    let bracket = tensor_from_raw(&raw.bracket, vec![n; 3], n, &format!("{path}.bracket"))?;
    let g = HomLts::new(bracket, alpha).map_err(|e| semantic(&path, e))?;
    match &raw.labels {
        Some(labels) => g
            .with_labels(labels.clone())
            .map_err(|e| semantic(format!("{path}.labels"), e)),
        None => Ok(g),
    }
}

fn resolve_lie(name: &str, raw: &RawAlgebra) -> Result<HomLieAlgebra, FormatError> {
    let path = format!("lie_algebras.{name}");
    if raw.labels.is_some() {
        return Err(semantic(format!("{path}.labels"), "labels are only supported on algebras"));
    }
    let n = raw.dim;
    let alpha = twist_from_raw(&raw.alpha, n, &format!("{path}.alpha"))?;
    let bracket = tensor_from_raw(&raw.bracket, vec![n; 2], n, &format!("{path}.bracket"))?;
    HomLieAlgebra::new(bracket, alpha).map_err(|e| semantic(&path, e))
}

fn adjoint_theta(g: &HomLts) -> SparseTensor {
    // θ(x, y)u = [u, x, y]: entry [u, x, y] -> l becomes [x, y, u] -> l.
    let mut t = SparseTensor::zero(vec![g.dim(); 3], g.dim());
    for (key, c) in g.bracket().entries() {
        t.add_entry(&[key[1], key[2], key[0]], key[3], c.clone())
            .expect("same dimensions");
    }
    t
}

pub fn resolve(doc: &Document) -> Result<Workspace, FormatError> {
    let mut ws = Workspace::default();
    for (name, raw) in &doc.algebras {
        ws.algebras.insert(name.clone(), resolve_lts(name, raw)?);
    }
    for (name, raw) in &doc.lie_algebras {
        ws.lie_algebras.insert(name.clone(), resolve_lie(name, raw)?);
    }
    for (name, raw) in &doc.actions {
        let path = format!("actions.{name}");
        let g = lookup(&ws.algebras, &raw.algebra, "algebra", &format!("{path}.algebra"))?;
        let h = lookup(&ws.algebras, &raw.module, "algebra", &format!("{path}.module"))?;
        let theta = match (&raw.theta, raw.adjoint) {
            (Some(entries), false) => tensor_from_raw(
                entries,
                vec![g.dim(), g.dim(), h.dim()],
                h.dim(),
                &format!("{path}.theta"),
            )?,
            (None, true) if raw.algebra == raw.module => adjoint_theta(g),
            (None, true) => {
                return Err(semantic(&path, "\"adjoint\" needs the module to be the algebra itself"))
            }
            _ => return Err(semantic(&path, "give exactly one of \"theta\" and \"adjoint\"")),
        };
        let action = Action::new(g.clone(), h.clone(), theta).map_err(|e| semantic(&path, e))?;
        ws.actions.insert(
            name.clone(),
            ActionEntry {
                algebra: raw.algebra.clone(),
                module: raw.module.clone(),
                action,
            },
        );
    }
    for (name, raw) in &doc.lie_actions {
        let path = format!("lie_actions.{name}");
        let g = lookup(&ws.lie_algebras, &raw.algebra, "Lie algebra", &format!("{path}.algebra"))?;
        let h = lookup(&ws.lie_algebras, &raw.module, "Lie algebra", &format!("{path}.module"))?;
        let rho = match (&raw.rho, raw.adjoint) {
            (Some(entries), false) => {
                tensor_from_raw(entries, vec![g.dim(), h.dim()], h.dim(), &format!("{path}.rho"))?
            }
            (None, true) if raw.algebra == raw.module => g.bracket().clone(),
            (None, true) => {
                return Err(semantic(&path, "\"adjoint\" needs the module to be the algebra itself"))
            }
            _ => return Err(semantic(&path, "give exactly one of \"rho\" and \"adjoint\"")),
        };
        let action = LieAction::new(g.clone(), h.clone(), rho).map_err(|e| semantic(&path, e))?;
        ws.lie_actions.insert(
            name.clone(),
            LieActionEntry {
                algebra: raw.algebra.clone(),
                module: raw.module.clone(),
                action,
            },
        );
    }
    for (name, raw) in &doc.maps {
        let path = format!("maps.{name}");
        let entry = if let Some(act) = ws.actions.get(&raw.action) {
            let (dg, dh) = (act.action.algebra().dim(), act.action.module().dim());
            let m = matrix_from_raw(&raw.matrix, dg, dh, &format!("{path}.matrix"))?;
            let op = WeightedOOperator::new(act.action.clone(), m, raw.kappa.0.clone())
                .map_err(|e| semantic(&path, e))?;
            MapEntry::Lts {
                action: raw.action.clone(),
                op,
            }
        } else if let Some(act) = ws.lie_actions.get(&raw.action) {
            let (dg, dh) = (act.action.algebra().dim(), act.action.module().dim());
            MapEntry::Lie {
                action: raw.action.clone(),
                map: matrix_from_raw(&raw.matrix, dg, dh, &format!("{path}.matrix"))?,
                lie_action: act.action.clone(),
                kappa: raw.kappa.0.clone(),
            }
        } else {
            return Err(semantic(
                format!("{path}.action"),
                format!("unknown action {:?}", raw.action),
            ));
        };
        ws.maps.insert(name.clone(), entry);
    }
    for (name, raw) in &doc.post_lts {
        let path = format!("post_lts.{name}");
        let n = raw.dim;
        let alpha = twist_from_raw(&raw.alpha, n, &format!("{path}.alpha"))?;
        let floor = tensor_from_raw(&raw.floor, vec![n; 3], n, &format!("{path}.floor"))?;
        let curly = tensor_from_raw(&raw.curly, vec![n; 3], n, &format!("{path}.curly"))?;
        let p = HomPostLts::new(floor, curly, alpha).map_err(|e| semantic(&path, e))?;
        ws.post_lts.insert(name.clone(), p);
    }
    for (name, raw) in &doc.post_lie {
        let path = format!("post_lie.{name}");
        let n = raw.dim;
        let alpha = twist_from_raw(&raw.alpha, n, &format!("{path}.alpha"))?;
        let bracket = tensor_from_raw(&raw.bracket, vec![n; 2], n, &format!("{path}.bracket"))?;
        let star = tensor_from_raw(&raw.star, vec![n; 2], n, &format!("{path}.star"))?;
        let p = HomPostLieAlgebra::new(bracket, star, alpha).map_err(|e| semantic(&path, e))?;
        ws.post_lie.insert(name.clone(), p);
    }
    for (name, raw) in &doc.deformations {
        let path = format!("deformations.{name}");
        let entry = lookup(&ws.maps, &raw.map, "map", &format!("{path}.map"))?;
        let MapEntry::Lts { op, .. } = entry else {
            return Err(semantic(
                format!("{path}.map"),
                format!("map {:?} is a Lie-level operator; deformations need a triple-system action", raw.map),
            ));
        };
        let (rows, cols) = (op.map().rows(), op.map().cols());
        let terms = raw
            .terms
            .iter()
            .enumerate()
            .map(|(i, m)| matrix_from_raw(m, rows, cols, &format!("{path}.terms[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let deformation = TruncatedDeformation::new(op.clone(), terms).map_err(|e| semantic(&path, e))?;
        ws.deformations.insert(
            name.clone(),
            DeformationEntry {
                map: raw.map.clone(),
                deformation,
            },
        );
    }
    Ok(ws)
}

fn algebra_to_raw(g: &HomLts) -> RawAlgebra {
    let default_labels: Vec<String> = (1..=g.dim()).map(|i| format!("e{i}")).collect();
    RawAlgebra {
        dim: g.dim(),
        labels: (g.labels() != default_labels.as_slice()).then(|| g.labels().to_vec()),
        alpha: Some(matrix_to_raw(g.alpha())),
        bracket: tensor_to_raw(g.bracket()),
    }
}

pub fn to_document(ws: &Workspace) -> Document {
    let mut doc = Document::default();
    for (name, g) in &ws.algebras {
        doc.algebras.insert(name.clone(), algebra_to_raw(g));
    }
    for (name, g) in &ws.lie_algebras {
        doc.lie_algebras.insert(
            name.clone(),
            RawAlgebra {
                dim: g.dim(),
                labels: None,
                alpha: Some(matrix_to_raw(g.alpha())),
                bracket: tensor_to_raw(g.bracket()),
            },
        );
    }
    for (name, a) in &ws.actions {
        doc.actions.insert(
            name.clone(),
            RawAction {
                algebra: a.algebra.clone(),
                module: a.module.clone(),
                theta: Some(tensor_to_raw(a.action.rep().theta())),
                adjoint: false,
            },
        );
    }
    for (name, a) in &ws.lie_actions {
        doc.lie_actions.insert(
            name.clone(),
            RawLieAction {
                algebra: a.algebra.clone(),
                module: a.module.clone(),
                rho: Some(tensor_to_raw(a.action.rho())),
                adjoint: false,
            },
        );
    }
    for (name, m) in &ws.maps {
        doc.maps.insert(
            name.clone(),
            RawMap {
                action: m.action_name().to_string(),
                matrix: matrix_to_raw(m.matrix()),
                kappa: Scalar(m.kappa().clone()),
            },
        );
    }
    for (name, p) in &ws.post_lts {
        doc.post_lts.insert(
            name.clone(),
            RawPostLts {
                dim: p.dim(),
                alpha: Some(matrix_to_raw(p.alpha())),
                floor: tensor_to_raw(p.floor()),
                curly: tensor_to_raw(p.curly()),
            },
        );
    }
    for (name, p) in &ws.post_lie {
        doc.post_lie.insert(
            name.clone(),
            RawPostLie {
                dim: p.dim(),
                alpha: Some(matrix_to_raw(p.alpha())),
                bracket: tensor_to_raw(p.bracket()),
                star: tensor_to_raw(p.star()),
            },
        );
    }
    for (name, d) in &ws.deformations {
        doc.deformations.insert(
            name.clone(),
            RawDeformation {
                map: d.map.clone(),
                terms: d.deformation.terms().iter().map(matrix_to_raw).collect(),
            },
        );
    }
    doc
}
