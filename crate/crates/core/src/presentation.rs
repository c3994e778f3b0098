//! Surgery presentations of closed 3-manifolds as combinatorial framed-link data.
//!
//! A presentation is an ordered list of components, each carrying a knot-type
//! tag and a rational surgery slope, together with the symmetric matrix of
//! pairwise linking numbers. Framings live in the slopes, so the linking
//! matrix always has a zero diagonal.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::IntMatrix;

/// Stable identifier of a link component. Ids survive every move that does
/// not delete the component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComponentId(pub u32);

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K{}", self.0)
    }
}

/// A surgery slope `num/den` in lowest terms with `den >= 0`.
///
/// The meridian is `1/0`; every other slope has a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SlopeRepr")]
pub struct Slope {
    num: i64,
    den: i64,
}

#[derive(Deserialize)]
struct SlopeRepr {
    num: i64,
    den: i64,
}

impl TryFrom<SlopeRepr> for Slope {
    type Error = Error;

    fn try_from(r: SlopeRepr) -> Result<Self> {
        Slope::new(r.num, r.den)
    }
}

impl Slope {
    pub const MERIDIAN: Slope = Slope { num: 1, den: 0 };

    /// Normalizes `num/den`: common factors are cancelled and the sign is moved
    /// onto the numerator. Any `±a/0` with `a != 0` collapses to `1/0`.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if num == 0 && den == 0 {
            return Err(Error::InvalidSlope);
        }
        if den == 0 {
            return Ok(Self::MERIDIAN);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = num.checked_neg().ok_or(Error::Overflow("slope"))?;
            den = den.checked_neg().ok_or(Error::Overflow("slope"))?;
        }
        Ok(Slope { num, den })
    }

    pub fn integer(framing: i64) -> Self {
        Slope { num: framing, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_meridional(&self) -> bool {
        self.den == 0
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    /// The integer framing, if the slope is integral.
    pub fn framing(&self) -> Option<i64> {
        self.is_integral().then_some(self.num)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Knot type of a single component.
///
/// Tags are asserted facts, not derived from diagrams. Moves that can change
/// a knot type degrade the tag to [`KnotTag::Unknown`]; only an explicit
/// retype restores it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "KnotTagRepr", into = "KnotTagRepr")]
pub enum KnotTag {
    Unknot,
    FigureEight,
    /// The 2-bridge knot `S(p, q)` exactly as written (not normalized).
    TwoBridge { p: i64, q: i64 },
    Unknown,
}

#[derive(Serialize, Deserialize)]
struct KnotTagRepr {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<i64>,
}

impl From<KnotTag> for KnotTagRepr {
    fn from(tag: KnotTag) -> Self {
        let (kind, p, q) = match tag {
            KnotTag::Unknot => ("Unknot", None, None),
            KnotTag::FigureEight => ("FigureEight", None, None),
            KnotTag::TwoBridge { p, q } => ("TwoBridge", Some(p), Some(q)),
            KnotTag::Unknown => ("Unknown", None, None),
        };
        KnotTagRepr { kind: kind.to_string(), p, q }
    }
}

impl TryFrom<KnotTagRepr> for KnotTag {
    type Error = Error;

    fn try_from(r: KnotTagRepr) -> Result<Self> {
        let plain = |tag: KnotTag| {
            if r.p.is_some() || r.q.is_some() {
                Err(Error::InvalidKnotTag(format!("{} takes no parameters", r.kind)))
            } else {
                Ok(tag)
            }
        };
        match r.kind.as_str() {
            "Unknot" => plain(KnotTag::Unknot),
            "FigureEight" => plain(KnotTag::FigureEight),
            "Unknown" => plain(KnotTag::Unknown),
            "TwoBridge" => match (r.p, r.q) {
                (Some(p), Some(q)) => KnotTag::two_bridge(p, q),
                _ => Err(Error::InvalidKnotTag("TwoBridge needs p and q".into())),
            },
            other => Err(Error::InvalidKnotTag(format!("unknown kind {other:?}"))),
        }
    }
}

impl KnotTag {
    /// Checked constructor for `S(p, q)`: `p` odd, `p >= 3`, `gcd(p, q) = 1`.
    pub fn two_bridge(p: i64, q: i64) -> Result<Self> {
        crate::twobridge::validate_knot_parameters(p, q)?;
        Ok(KnotTag::TwoBridge { p, q })
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            KnotTag::TwoBridge { p, q } => crate::twobridge::validate_knot_parameters(p, q),
            _ => Ok(()),
        }
    }

    pub fn is_unknot(&self) -> bool {
        matches!(self, KnotTag::Unknot)
    }
}

impl fmt::Display for KnotTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotTag::Unknot => f.write_str("Unknot"),
            KnotTag::FigureEight => f.write_str("FigureEight"),
            KnotTag::TwoBridge { p, q } => write!(f, "S({p},{q})"),
            KnotTag::Unknown => f.write_str("Unknown"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub id: ComponentId,
    pub knot: KnotTag,
    pub slope: Slope,
}

/// A framed (possibly rationally framed) link in S³, up to the data that
/// survives without a diagram: knot tags, slopes, and linking numbers.
///
/// The empty presentation presents S³.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PresentationRepr")]
pub struct SurgeryPresentation {
    components: Vec<Component>,
    linking: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct PresentationRepr {
    components: Vec<Component>,
    linking: Vec<Vec<i64>>,
}

impl TryFrom<PresentationRepr> for SurgeryPresentation {
    type Error = Error;

    fn try_from(r: PresentationRepr) -> Result<Self> {
        Self::from_parts(r.components, r.linking)
    }
}

/// Checks that `linking` is a square symmetric matrix with zero diagonal and
/// `n` rows.
fn validate_linking(n: usize, linking: &[Vec<i64>]) -> Result<()> {
    for row in linking {
        if row.len() != linking.len() {
            return Err(Error::DimensionMismatch {
                rows: linking.len(),
                cols: row.len(),
                components: n,
            });
        }
    }
    if linking.len() != n {
        return Err(Error::DimensionMismatch {
            rows: linking.len(),
            cols: linking.first().map_or(0, Vec::len),
            components: n,
        });
    }
    for i in 0..n {
        if linking[i][i] != 0 {
            return Err(Error::NonzeroDiagonal(i));
        }
        for j in (i + 1)..n {
            if linking[i][j] != linking[j][i] {
                return Err(Error::AsymmetricMatrix(i, j));
            }
        }
    }
    Ok(())
}

impl SurgeryPresentation {
    /// Builds a presentation with fresh sequential ids `1, 2, …`.
    pub fn new(components: Vec<(KnotTag, Slope)>, linking: Vec<Vec<i64>>) -> Result<Self> {
        validate_linking(components.len(), &linking)?;
        let components = components
            .into_iter()
            .enumerate()
            .map(|(i, (knot, slope))| {
                knot.validate()?;
                Ok(Component {
                    id: ComponentId(i as u32 + 1),
                    knot,
                    slope,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SurgeryPresentation { components, linking })
    }

    /// Builds a presentation from explicit components (ids included).
    pub fn from_parts(components: Vec<Component>, linking: Vec<Vec<i64>>) -> Result<Self> {
        validate_linking(components.len(), &linking)?;
        let mut seen = std::collections::BTreeSet::new();
        for c in &components {
            if !seen.insert(c.id) {
                return Err(Error::DuplicateId(c.id));
            }
            c.knot.validate()?;
        }
        Ok(SurgeryPresentation { components, linking })
    }

    pub fn empty() -> Self {
        SurgeryPresentation {
            components: Vec::new(),
            linking: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn linking(&self) -> &[Vec<i64>] {
        &self.linking
    }

    pub fn ids(&self) -> impl Iterator<Item = ComponentId> + '_ {
        self.components.iter().map(|c| c.id)
    }

    pub fn index_of(&self, id: ComponentId) -> Result<usize> {
        self.components
            .iter()
            .position(|c| c.id == id)
            .ok_or(Error::UnknownId(id))
    }

    pub fn component(&self, id: ComponentId) -> Result<&Component> {
        self.index_of(id).map(|i| &self.components[i])
    }

    /// Linking number between two components (0 for a component with itself).
    pub fn lk(&self, a: ComponentId, b: ComponentId) -> Result<i64> {
        Ok(self.linking[self.index_of(a)?][self.index_of(b)?])
    }

    /// One more than the largest id in use.
    pub fn next_id(&self) -> ComponentId {
        ComponentId(self.ids().map(|id| id.0).max().unwrap_or(0) + 1)
    }

    /// Framings on the diagonal, linking numbers off it. Only defined for
    /// integral presentations.
    pub fn framed_linking_matrix(&self) -> Result<FramedLinkingMatrix> {
        let mut m = self.linking.clone();
        for (i, c) in self.components.iter().enumerate() {
            if c.slope.is_meridional() {
                return Err(Error::Meridional(c.id));
            }
            m[i][i] = c.slope.framing().ok_or(Error::NonIntegral(c.id))?;
        }
        Ok(FramedLinkingMatrix(m))
    }

    /// Presentation matrix of H₁ for rational surgery: row `i` is
    /// `num_i·μ_i + den_i·Σ_j lk(i,j)·μ_j`.
    pub fn generalized_relation_matrix(&self) -> Result<IntMatrix> {
        let n = self.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, c) in self.components.iter().enumerate() {
            if c.slope.is_meridional() {
                return Err(Error::Meridional(c.id));
            }
            for j in 0..n {
                let v = if i == j {
                    BigInt::from(c.slope.num())
                } else {
                    BigInt::from(c.slope.den()) * self.linking[i][j]
                };
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// The same manifold with every `1/0`-sloped component filled trivially,
    /// i.e. removed.
    pub fn without_meridional(&self) -> SurgeryPresentation {
        let keep: Vec<usize> = (0..self.len())
            .filter(|&i| !self.components[i].slope.is_meridional())
            .collect();
        self.restrict(&keep)
    }

    /// Sub-presentation on the given indices, in the given order.
    pub(crate) fn restrict(&self, keep: &[usize]) -> SurgeryPresentation {
        SurgeryPresentation {
            components: keep.iter().map(|&i| self.components[i].clone()).collect(),
            linking: keep
                .iter()
                .map(|&i| keep.iter().map(|&j| self.linking[i][j]).collect())
                .collect(),
        }
    }

    /// Equality of everything except component ids, comparing components in
    /// order.
    pub fn same_up_to_renumbering(&self, other: &SurgeryPresentation) -> bool {
        self.linking == other.linking
            && self.len() == other.len()
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| a.knot == b.knot && a.slope == b.slope)
    }

    pub(crate) fn components_mut(&mut self) -> &mut [Component] {
        &mut self.components
    }

    pub(crate) fn linking_mut(&mut self) -> &mut Vec<Vec<i64>> {
        &mut self.linking
    }

    pub(crate) fn push_component(&mut self, component: Component, row: Vec<i64>) {
        debug_assert_eq!(row.len(), self.len());
        for (r, v) in self.linking.iter_mut().zip(&row) {
            r.push(*v);
        }
        let mut new_row = row;
        new_row.push(0);
        self.linking.push(new_row);
        self.components.push(component);
    }

    pub(crate) fn remove_index(&mut self, idx: usize) -> Component {
        self.linking.remove(idx);
        for row in &mut self.linking {
            row.remove(idx);
        }
        self.components.remove(idx)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serializes")
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Square symmetric integer matrix of an integral presentation: framings on
/// the diagonal, linking numbers elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FramedLinkingMatrix(Vec<Vec<i64>>);

impl FramedLinkingMatrix {
    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.0.len();
        (0..n).all(|i| (0..n).all(|j| self.0[i][j] == self.0[j][i]))
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.0)
    }
}

impl From<FramedLinkingMatrix> for Vec<Vec<i64>> {
    fn from(m: FramedLinkingMatrix) -> Self {
        m.0
    }
}
