//! Coordinate systems, rotation, object placement and bounding-box
//! accounting.
//!
//! Canvas coordinates are "device" coordinates: the reference-point origin
//! has already been subtracted. Measures resolve against the current units
//! in coordinate mode or pass through raw in dimension mode; rotation (when
//! active) applies to resolved positions before the origin is removed,
//! exactly as in the source engine.

use crate::fixed::{Decimal, Dimen, FixedError, FixedResult};
use crate::Diagnostics;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error(transparent)]
    Numeric(#[from] FixedError),
    #[error("dimension literal used as a coordinate")]
    DimensionInCoordinateMode,
    #[error("inverted plot range")]
    InvalidArea,
}

pub type GeomResult<T> = Result<T, GeomError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Point {
    pub x: Dimen,
    pub y: Dimen,
}

impl Point {
    pub const ORIGIN: Point = Point {
        x: Dimen::ZERO,
        y: Dimen::ZERO,
    };

    pub fn new(x: Dimen, y: Dimen) -> Point {
        Point { x, y }
    }

    pub fn add(self, other: Point) -> FixedResult<Point> {
        Ok(Point {
            x: self.x.add(other.x)?,
            y: self.y.add(other.y)?,
        })
    }

    pub fn sub(self, other: Point) -> FixedResult<Point> {
        Ok(Point {
            x: self.x.sub(other.x)?,
            y: self.y.sub(other.y)?,
        })
    }
}

/// Width, height above the baseline, depth below it. All non-negative for
/// placed objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Extents {
    pub w: Dimen,
    pub h: Dimen,
    pub d: Dimen,
}

impl Extents {
    pub fn new(w: Dimen, h: Dimen, d: Dimen) -> Extents {
        Extents { w, h, d }
    }

    pub const ZERO: Extents = Extents {
        w: Dimen::ZERO,
        h: Dimen::ZERO,
        d: Dimen::ZERO,
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rect {
    pub left: Dimen,
    pub bottom: Dimen,
    pub right: Dimen,
    pub top: Dimen,
}

/// How numeric measures are read: multiplied by the axis unit, or taken
/// as raw lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureMode {
    Coordinate,
    Dimension,
}

/// A coordinate-or-length argument as written in the picture source.
#[derive(Debug, Clone, PartialEq)]
pub enum Measure {
    Coord(Decimal),
    Dim(Dimen),
}

impl Measure {
    pub fn coord(text: &str) -> FixedResult<Measure> {
        Ok(Measure::Coord(Decimal::new(text)?))
    }
}

/// Resolve one measure against a unit under the given mode.
///
/// A bare numeral in dimension mode reads as a pt length; a dimension
/// literal in coordinate mode is an error (the source would misparse it).
pub fn resolve(m: &Measure, unit: Dimen, mode: MeasureMode) -> GeomResult<Dimen> {
    match (mode, m) {
        (MeasureMode::Coordinate, Measure::Coord(c)) => Ok(unit.scaled_by(c)?),
        (MeasureMode::Coordinate, Measure::Dim(_)) => Err(GeomError::DimensionInCoordinateMode),
        (MeasureMode::Dimension, Measure::Dim(d)) => Ok(*d),
        (MeasureMode::Dimension, Measure::Coord(c)) => Ok(c.to_dimen()?),
    }
}

/// Units, reference point and measure mode.
#[derive(Debug, Clone)]
pub struct CoordSystem {
    pub xunit: Dimen,
    pub yunit: Dimen,
    pub xorigin: Dimen,
    pub yorigin: Dimen,
    pub mode: MeasureMode,
    xref: Decimal,
    yref: Decimal,
}

impl Default for CoordSystem {
    fn default() -> CoordSystem {
        CoordSystem {
            xunit: Dimen::pt(1).unwrap(),
            yunit: Dimen::pt(1).unwrap(),
            xorigin: Dimen::ZERO,
            yorigin: Dimen::ZERO,
            mode: MeasureMode::Coordinate,
            xref: Decimal::zero(),
            yref: Decimal::zero(),
        }
    }
}

impl CoordSystem {
    /// Change the units. In coordinate mode the stored reference point is
    /// re-applied against the new units.
    pub fn set_units(&mut self, xunit: Dimen, yunit: Dimen) -> GeomResult<()> {
        self.xunit = xunit;
        self.yunit = yunit;
        if self.mode == MeasureMode::Coordinate {
            self.xorigin = self.xunit.scaled_by(&self.xref)?;
            self.yorigin = self.yunit.scaled_by(&self.yref)?;
        }
        Ok(())
    }

    pub fn set_reference_coord(&mut self, xref: Decimal, yref: Decimal) -> GeomResult<()> {
        self.xorigin = self.xunit.scaled_by(&xref)?;
        self.yorigin = self.yunit.scaled_by(&yref)?;
        self.xref = xref;
        self.yref = yref;
        Ok(())
    }

    pub fn set_reference_dim(&mut self, xorigin: Dimen, yorigin: Dimen) {
        self.xorigin = xorigin;
        self.yorigin = yorigin;
    }

    pub fn origin(&self) -> Point {
        Point::new(self.xorigin, self.yorigin)
    }
}

/// Rotation about a pivot with decimal cosine/sine multipliers. The
/// cos/sin and pivot coordinates persist across stop/start.
#[derive(Debug, Clone)]
pub struct RotationState {
    pub active: bool,
    pub cos: Decimal,
    pub sin: Decimal,
    pub pivot: Point,
    pivot_xcoord: Decimal,
    pivot_ycoord: Decimal,
}

impl Default for RotationState {
    fn default() -> RotationState {
        RotationState {
            active: false,
            cos: Decimal::new("1").unwrap(),
            sin: Decimal::zero(),
            pivot: Point::ORIGIN,
            pivot_xcoord: Decimal::zero(),
            pivot_ycoord: Decimal::zero(),
        }
    }
}

impl RotationState {
    pub fn start(&mut self, cos: Option<(Decimal, Decimal)>) {
        if let Some((c, s)) = cos {
            self.cos = c;
            self.sin = s;
        }
        self.active = true;
    }

    pub fn stop(&mut self) {
        self.active = false;
    }

    pub fn set_pivot_coord(
        &mut self,
        x: Decimal,
        y: Decimal,
        xunit: Dimen,
        yunit: Dimen,
    ) -> FixedResult<()> {
        self.pivot = Point::new(xunit.scaled_by(&x)?, yunit.scaled_by(&y)?);
        self.pivot_xcoord = x;
        self.pivot_ycoord = y;
        Ok(())
    }

    pub fn set_pivot_dim(&mut self, pivot: Point) {
        self.pivot = pivot;
    }

    pub fn stored_pivot_coords(&self) -> (Decimal, Decimal) {
        (self.pivot_xcoord.clone(), self.pivot_ycoord.clone())
    }

    /// Translate by -pivot, rotate, translate back. Identity when inactive.
    pub fn rotate_about_pivot(&self, p: Point) -> FixedResult<Point> {
        if !self.active {
            return Ok(p);
        }
        let a = p.x.sub(self.pivot.x)?;
        let b = p.y.sub(self.pivot.y)?;
        let c = a.scaled_by(&self.cos)?.sub(b.scaled_by(&self.sin)?)?;
        let d = b.scaled_by(&self.cos)?.add(a.scaled_by(&self.sin)?)?;
        Ok(Point::new(c.add(self.pivot.x)?, d.add(self.pivot.y)?))
    }

    /// Rotate a displacement without the pivot translation.
    pub fn rotate_only(&self, v: Point) -> FixedResult<Point> {
        self.rotate_vector(v, false)
    }

    /// Rotate with the sine sign flipped (the inverse rotation); used for
    /// tip offsets that must stay fixed in device space.
    pub fn reverse_rotate(&self, v: Point) -> FixedResult<Point> {
        self.rotate_vector(v, true)
    }

    fn rotate_vector(&self, v: Point, reverse: bool) -> FixedResult<Point> {
        if !self.active {
            return Ok(v);
        }
        let sx = v.y.scaled_by(&self.sin)?;
        let sy = v.x.scaled_by(&self.sin)?;
        let (sx, sy) = if reverse { (-sx, -sy) } else { (sx, sy) };
        Ok(Point::new(
            v.x.scaled_by(&self.cos)?.sub(sx)?,
            v.y.scaled_by(&self.cos)?.add(sy)?,
        ))
    }
}

/// The pair every placement op works against.
#[derive(Debug, Clone, Default)]
pub struct CoordFrame {
    pub system: CoordSystem,
    pub rotation: RotationState,
}

impl CoordFrame {
    pub fn resolve_x(&self, m: &Measure) -> GeomResult<Dimen> {
        resolve(m, self.system.xunit, self.system.mode)
    }

    pub fn resolve_y(&self, m: &Measure) -> GeomResult<Dimen> {
        resolve(m, self.system.yunit, self.system.mode)
    }

    /// Resolve a coordinate pair; no rotation applied.
    pub fn resolve_point(&self, p: (&Measure, &Measure)) -> GeomResult<Point> {
        Ok(Point::new(self.resolve_x(p.0)?, self.resolve_y(p.1)?))
    }

    pub fn xdistance(&self, m: &Measure) -> GeomResult<Dimen> {
        self.resolve_x(m)
    }

    pub fn ydistance(&self, m: &Measure) -> GeomResult<Dimen> {
        self.resolve_y(m)
    }
}

// ---------------------------------------------------------------------------
// Canvas
// ---------------------------------------------------------------------------

/// Shapes a plot or shade symbol can take.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolShape {
    Disk { diameter: Dimen },
    Rect { w: Dimen, h: Dimen },
    Glyph { text: String },
    /// The empty box used to measure without marking.
    Invisible,
}

/// One laid-out line of a text block, offset from the block reference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextLine {
    pub text: String,
    pub dx: Dimen,
    pub dy: Dimen,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ItemPayload {
    /// A stamped symbol copy (curve dots, shade stations, replot replays).
    Dot(SymbolShape),
    /// A filled rectangle; geometry comes from the extents (depth 0).
    Rule,
    /// Laid-out text lines with the font size they were measured at.
    Text { lines: Vec<TextLine>, em: Dimen },
    /// Invisible spacer that participates in accounting only.
    Sizing,
}

/// An item on the canvas: reference position plus box extents.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacedItem {
    pub pos: Point,
    pub ext: Extents,
    pub payload: ItemPayload,
}

impl PlacedItem {
    pub fn translated(&self, offset: Point) -> FixedResult<PlacedItem> {
        Ok(PlacedItem {
            pos: self.pos.add(offset)?,
            ext: self.ext,
            payload: self.payload.clone(),
        })
    }
}

/// Ordered item list plus the running bounding box. Items are kept in
/// emission order; back-ends must not reorder them.
#[derive(Debug, Clone)]
pub struct Canvas {
    pub items: Vec<PlacedItem>,
    pub xleft: Dimen,
    pub xright: Dimen,
    pub ybot: Dimen,
    pub ytop: Dimen,
    pub accounting: bool,
}

impl Default for Canvas {
    fn default() -> Canvas {
        Canvas::new()
    }
}

impl Canvas {
    pub fn new() -> Canvas {
        Canvas {
            items: Vec::new(),
            xleft: Dimen::MAX,
            xright: -Dimen::MAX,
            ybot: Dimen::MAX,
            ytop: -Dimen::MAX,
            accounting: true,
        }
    }

    pub fn has_bbox(&self) -> bool {
        self.xleft != Dimen::MAX
    }

    /// Append without touching the bounding box (dots, ticks, shading).
    pub fn push(&mut self, item: PlacedItem) {
        self.items.push(item);
    }

    /// Append and account, subject to the accounting toggle.
    pub fn place(&mut self, item: PlacedItem) -> FixedResult<()> {
        let pos = item.pos;
        let ext = item.ext;
        self.items.push(item);
        if self.accounting {
            self.account(pos, ext)?;
        }
        Ok(())
    }

    /// Fold a box into the bounding box.
    pub fn account(&mut self, pos: Point, ext: Extents) -> FixedResult<()> {
        if pos.x < self.xleft {
            self.xleft = pos.x;
        }
        let right = pos.x.add(ext.w)?;
        if self.xright < right {
            self.xright = right;
        }
        let bot = pos.y.sub(ext.d)?;
        if bot < self.ybot {
            self.ybot = bot;
        }
        let top = pos.y.add(ext.h)?;
        if top > self.ytop {
            self.ytop = top;
        }
        Ok(())
    }

    pub fn finalize(&self) -> FixedResult<PictureBox> {
        if !self.has_bbox() {
            return Ok(PictureBox {
                xleft: Dimen::ZERO,
                xright: Dimen::ZERO,
                ybot: Dimen::ZERO,
                ytop: Dimen::ZERO,
            });
        }
        Ok(PictureBox {
            xleft: self.xleft,
            xright: self.xright,
            ybot: self.ybot,
            ytop: self.ytop,
        })
    }
}

/// The finalized picture: bounding box with derived box metrics. `shift`
/// is the baseline adjustment a container applies when placing the box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PictureBox {
    pub xleft: Dimen,
    pub xright: Dimen,
    pub ybot: Dimen,
    pub ytop: Dimen,
}

impl PictureBox {
    pub fn width(&self) -> FixedResult<Dimen> {
        self.xright.sub(self.xleft)
    }

    pub fn height(&self) -> Dimen {
        self.ytop
    }

    pub fn depth(&self) -> Dimen {
        -self.ybot
    }

    /// Baseline shift: none when the picture reaches above the axis,
    /// `ytop` when it lies entirely below.
    pub fn shift(&self) -> Dimen {
        if self.ybot > Dimen::ZERO {
            Dimen::ZERO
        } else if self.ytop < Dimen::ZERO {
            self.ytop
        } else {
            Dimen::ZERO
        }
    }

    /// Extents seen by a placement of this box.
    pub fn placed_extents(&self) -> FixedResult<Extents> {
        Ok(Extents::new(
            self.width()?,
            self.ytop.sub(self.shift())?,
            self.shift().sub(self.ybot)?,
        ))
    }

    /// Reported to the save variant: lower-left of the box as placed.
    pub fn saved_corner(&self) -> (Dimen, Dimen) {
        (self.xleft, self.shift())
    }
}

// ---------------------------------------------------------------------------
// Orientation and placement
// ---------------------------------------------------------------------------

/// Anchor shifts for an object of the given extents: default is the
/// center; markers revise one axis each, applied in sequence; the extra
/// offset is subtracted last. Unknown markers are reported and skipped.
pub fn orient_shifts(
    ext: Extents,
    markers: &str,
    offset: (Dimen, Dimen),
    diags: &mut Diagnostics,
) -> FixedResult<(Dimen, Dimen)> {
    let mut xshift = ext.w.half();
    let mut yshift = ext.h.half().sub(ext.d.half())?;
    for m in markers.chars() {
        match m {
            'l' => xshift = Dimen::ZERO,
            'r' => xshift = ext.w,
            'b' => yshift = -ext.d,
            'B' => yshift = Dimen::ZERO,
            't' => yshift = ext.h,
            ' ' => {}
            other => diags.note(format!("unknown orientation marker `{other}` ignored")),
        }
    }
    xshift = xshift.sub(offset.0)?;
    yshift = yshift.sub(offset.1)?;
    Ok((xshift, yshift))
}

/// A realized object: extents plus its items in local coordinates with
/// the reference point at the local origin.
#[derive(Debug, Clone, Default)]
pub struct RealizedObject {
    pub ext: Extents,
    pub items: Vec<PlacedItem>,
}

impl RealizedObject {
    pub fn empty(ext: Extents) -> RealizedObject {
        RealizedObject {
            ext,
            items: Vec::new(),
        }
    }
}

fn stamp(canvas: &mut Canvas, obj: &RealizedObject, pos: Point) -> FixedResult<()> {
    for item in &obj.items {
        let translated = item.translated(pos)?;
        canvas.push(translated);
    }
    Ok(())
}

/// Place an object at a coordinate pair: resolve, rotate about the pivot,
/// subtract origin and anchor shifts, stamp the items, account the box.
/// Returns the placement position (the put cursor).
pub fn put(
    canvas: &mut Canvas,
    frame: &CoordFrame,
    obj: &RealizedObject,
    markers: &str,
    offset: (Dimen, Dimen),
    at: (&Measure, &Measure),
    diags: &mut Diagnostics,
) -> GeomResult<Point> {
    let p = frame.resolve_point(at)?;
    put_resolved(canvas, frame, obj, markers, offset, p, diags)
}

/// `put` for a pre-resolved position (internal callers in dimension mode).
pub fn put_resolved(
    canvas: &mut Canvas,
    frame: &CoordFrame,
    obj: &RealizedObject,
    markers: &str,
    offset: (Dimen, Dimen),
    at: Point,
    diags: &mut Diagnostics,
) -> GeomResult<Point> {
    let p = frame.rotation.rotate_about_pivot(at)?;
    let (xshift, yshift) = orient_shifts(obj.ext, markers, offset, diags)?;
    let pos = Point::new(
        p.x.sub(frame.system.xorigin)?.sub(xshift)?,
        p.y.sub(frame.system.yorigin)?.sub(yshift)?,
    );
    stamp(canvas, obj, pos)?;
    if canvas.accounting {
        canvas.account(pos, obj.ext)?;
    }
    Ok(pos)
}

/// Raw placement at device coordinates (no resolve, rotation or origin).
pub fn dimenput(
    canvas: &mut Canvas,
    obj: &RealizedObject,
    markers: &str,
    offset: (Dimen, Dimen),
    at: Point,
    diags: &mut Diagnostics,
) -> GeomResult<Point> {
    let (xshift, yshift) = orient_shifts(obj.ext, markers, offset, diags)?;
    let pos = Point::new(at.x.sub(xshift)?, at.y.sub(yshift)?);
    stamp(canvas, obj, pos)?;
    if canvas.accounting {
        canvas.account(pos, obj.ext)?;
    }
    Ok(pos)
}

/// One entry of a multiput stream.
#[derive(Debug, Clone, PartialEq)]
pub enum MultiputEntry {
    At(Measure, Measure),
    /// n extra copies stepping by the rotated displacement.
    Step {
        n: i32,
        dx: Measure,
        dy: Measure,
    },
}

/// Place an object at several positions. `cursor` is the persistent put
/// position; step groups advance from it and account only their final
/// copy, as the source does.
pub fn multiput(
    canvas: &mut Canvas,
    frame: &CoordFrame,
    obj: &RealizedObject,
    markers: &str,
    offset: (Dimen, Dimen),
    entries: &[MultiputEntry],
    cursor: Point,
    diags: &mut Diagnostics,
) -> GeomResult<Point> {
    let mut pos = cursor;
    let (xshift, yshift) = orient_shifts(obj.ext, markers, offset, diags)?;
    for entry in entries {
        match entry {
            MultiputEntry::At(mx, my) => {
                let p = frame
                    .rotation
                    .rotate_about_pivot(frame.resolve_point((mx, my))?)?;
                pos = Point::new(
                    p.x.sub(frame.system.xorigin)?.sub(xshift)?,
                    p.y.sub(frame.system.yorigin)?.sub(yshift)?,
                );
                stamp(canvas, obj, pos)?;
                if canvas.accounting {
                    canvas.account(pos, obj.ext)?;
                }
            }
            MultiputEntry::Step { n, dx, dy } => {
                let d = frame
                    .rotation
                    .rotate_only(frame.resolve_point((dx, dy))?)?;
                for _ in 0..*n {
                    pos = pos.add(d)?;
                    stamp(canvas, obj, pos)?;
                }
                if canvas.accounting {
                    canvas.account(pos, obj.ext)?;
                }
            }
        }
    }
    Ok(pos)
}

// ---------------------------------------------------------------------------
// Synthetic text metrics and blocks
// ---------------------------------------------------------------------------

/// Deterministic stand-in for font metrics: every character advances half
/// an em; lines ascend 0.7 em and descend 0.3 em.
#[derive(Debug, Clone, Copy)]
pub struct TextMetrics {
    pub em: Dimen,
}

impl TextMetrics {
    pub fn new(em: Dimen) -> TextMetrics {
        TextMetrics { em }
    }

    pub fn advance(&self) -> Dimen {
        self.em.half()
    }

    /// 0.7 em, computed exactly so ascender + descender = em.
    pub fn ascender(&self) -> FixedResult<Dimen> {
        Dimen::from_sp((self.em.sp() as i64 * 7 / 10) as i32)
    }

    pub fn descender(&self) -> FixedResult<Dimen> {
        self.em.sub(self.ascender()?)
    }

    pub fn line_width(&self, text: &str) -> FixedResult<Dimen> {
        let n = text.chars().count() as i32;
        self.advance().mul_i32(n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HAlign {
    Left,
    Center,
    Right,
}

/// Vertical packing of a multi-line block: a fixed gap between line boxes,
/// or baseline-to-baseline leading (never tighter than the line height).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockSpacing {
    Gap(Dimen),
    Baseline(Dimen),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockAnchor {
    FirstBaseline,
    LastBaseline,
}

#[derive(Debug, Clone, Default)]
pub struct TextBlock {
    pub ext: Extents,
    pub lines: Vec<TextLine>,
}

/// Lay out lines into a block with the synthetic metrics. The block
/// reference sits on the anchored line's baseline at the left edge.
pub fn layout_text_block(
    lines: &[String],
    align: HAlign,
    spacing: BlockSpacing,
    anchor: BlockAnchor,
    metrics: &TextMetrics,
) -> FixedResult<TextBlock> {
    if lines.is_empty() {
        return Ok(TextBlock::default());
    }
    let asc = metrics.ascender()?;
    let desc = metrics.descender()?;
    let widths: Vec<Dimen> = lines
        .iter()
        .map(|l| metrics.line_width(l))
        .collect::<FixedResult<_>>()?;
    let block_w = widths.iter().copied().max().unwrap_or(Dimen::ZERO);
    let step = match spacing {
        BlockSpacing::Gap(g) => asc.add(desc)?.add(g)?,
        BlockSpacing::Baseline(bs) => {
            let natural = asc.add(desc)?;
            if bs > natural {
                bs
            } else {
                natural
            }
        }
    };
    let k = lines.len() as i32;
    let mut placed = Vec::with_capacity(lines.len());
    for (i, (line, w)) in lines.iter().zip(&widths).enumerate() {
        let dy = match anchor {
            BlockAnchor::LastBaseline => step.mul_i32(k - 1 - i as i32)?,
            BlockAnchor::FirstBaseline => -step.mul_i32(i as i32)?,
        };
        let dx = match align {
            HAlign::Left => Dimen::ZERO,
            HAlign::Center => block_w.sub(*w)?.half(),
            HAlign::Right => block_w.sub(*w)?,
        };
        placed.push(TextLine {
            text: line.clone(),
            dx,
            dy,
        });
    }
    let span = step.mul_i32(k - 1)?;
    let ext = match anchor {
        BlockAnchor::LastBaseline => Extents::new(block_w, span.add(asc)?, desc),
        BlockAnchor::FirstBaseline => Extents::new(block_w, asc, span.add(desc)?),
    };
    Ok(TextBlock { ext, lines: placed })
}
