//! Lie closure over the `{iP}` basis with an echelonized exact basis.
//!
//! The kernel interns Pauli strings into dense ids, keeps basis rows as
//! sparse integer vectors in fully reduced row-echelon form (unique given
//! the pivot order), and reduces bracket candidates fraction-free. All
//! arithmetic is exact: the fast kernel uses checked `i128` and the whole
//! computation transparently retries over big integers if any product would
//! overflow.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::time::Instant;

use num::bigint::BigInt;
use num::rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::ClosureError;
use crate::pauli::PauliString;
use crate::scalar::{Coeff, Fp, FP_P};
use crate::vector::Element;

/// Optional stopping budgets for [`close`]. An exhausted budget yields a
/// bracket-closed-so-far lower bound with `exact = false`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub max_dim: Option<usize>,
    pub max_brackets: Option<u64>,
    pub max_seconds: Option<f64>,
}

impl Budget {
    pub fn is_unlimited(&self) -> bool {
        self.max_dim.is_none() && self.max_brackets.is_none() && self.max_seconds.is_none()
    }
}

/// Which elements each frontier entry is bracketed against.
///
/// `Generators` brackets new elements against the seed rows only; left-normed
/// bracket words span the generated algebra, so this reaches the same span as
/// `FullBasis` with far fewer bracket evaluations, and the output rows are
/// identical because the reduced row-echelon basis of a subspace is unique.
/// `FullBasis` is retained for cross-checking.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum BracketSchedule {
    #[default]
    Generators,
    FullBasis,
}

/// Outcome statistics of a closure run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub dimension: usize,
    /// `false` means a budget was exhausted and `dimension` is a lower bound.
    pub exact: bool,
    pub brackets_evaluated: u64,
    pub wall_time_seconds: f64,
}

/// A computed Lie algebra: canonical primitive rows in fully reduced
/// row-echelon form, ascending in the `(z_mask, x_mask)` pivot order.
pub struct DlaBasis {
    n: usize,
    store: Store,
    exact: bool,
    pub provenance: String,
}

enum Store {
    Small(Kernel<i128>),
    Big(Kernel<BigInt>),
    /// Budget-stopped discovery state: a span witness over the prime field.
    /// The dimension is a certified lower bound; row values are residues.
    Modular(Kernel<Fp>),
}

/// String intern table: dense ids for every Pauli string seen.
struct Intern {
    strings: Vec<PauliString>,
    by_string: HashMap<PauliString, u32>,
}

impl Intern {
    fn new() -> Self {
        Intern { strings: vec![], by_string: HashMap::new() }
    }

    fn id(&mut self, s: PauliString) -> u32 {
        if let Some(&id) = self.by_string.get(&s) {
            return id;
        }
        let id = self.strings.len() as u32;
        self.strings.push(s);
        self.by_string.insert(s, id);
        id
    }

    fn lookup(&self, s: &PauliString) -> Option<u32> {
        self.by_string.get(s).copied()
    }

    fn len(&self) -> usize {
        self.strings.len()
    }
}

/// One echelon row: parallel id/coefficient arrays in ascending key order.
struct Row<C> {
    ids: Vec<u32>,
    coeffs: Vec<C>,
}

impl<C: Coeff> Row<C> {
    fn pivot_id(&self) -> u32 {
        self.ids[0]
    }
    fn pivot_coeff(&self) -> &C {
        &self.coeffs[0]
    }
    fn len(&self) -> usize {
        self.ids.len()
    }
}

struct Kernel<C> {
    intern: Intern,
    rows: Vec<Row<C>>,
    /// pivot key -> row index; ascending iteration order drives reductions.
    by_pivot: BTreeMap<(u64, u64), usize>,
}

/// Reusable dense reduction workspace.
struct Workspace<C> {
    dense: Vec<C>,
    touched: Vec<u32>,
    is_touched: Vec<bool>,
}

/// A checked `i128` operation overflowed; the caller retries over `BigInt`.
struct Overflow;

impl<C: Coeff> Workspace<C> {
    fn new() -> Self {
        Workspace { dense: vec![], touched: vec![], is_touched: vec![] }
    }

    fn ensure(&mut self, len: usize) {
        if self.dense.len() < len {
            self.dense.resize(len, C::zero());
            self.is_touched.resize(len, false);
        }
    }

    fn touch(&mut self, id: u32) {
        if !self.is_touched[id as usize] {
            self.is_touched[id as usize] = true;
            self.touched.push(id);
        }
    }

    fn add(&mut self, id: u32, value: &C) -> Result<(), Overflow> {
        self.ensure(id as usize + 1);
        let slot = &mut self.dense[id as usize];
        *slot = slot.checked_add(value).ok_or(Overflow)?;
        self.touch(id);
        Ok(())
    }

    fn sub(&mut self, id: u32, value: &C) -> Result<(), Overflow> {
        self.ensure(id as usize + 1);
        let slot = &mut self.dense[id as usize];
        *slot = slot.checked_sub(value).ok_or(Overflow)?;
        self.touch(id);
        Ok(())
    }

    fn clear(&mut self) {
        for &id in &self.touched {
            self.dense[id as usize] = C::zero();
            self.is_touched[id as usize] = false;
        }
        self.touched.clear();
    }

    fn scale_all(&mut self, a: &C) -> Result<(), Overflow> {
        for &id in &self.touched {
            let v = &self.dense[id as usize];
            if !v.is_zero() {
                self.dense[id as usize] = v.checked_mul(a).ok_or(Overflow)?;
            }
        }
        Ok(())
    }

    /// Divide every touched entry by the common content, keeping growth in
    /// check during fraction-free elimination.
    fn normalize_content(&mut self) {
        let mut g = C::zero();
        for &id in &self.touched {
            let v = &self.dense[id as usize];
            if !v.is_zero() {
                g = g.gcd(v);
            }
        }
        let one = C::one();
        if g.is_zero() || g == one {
            return;
        }
        for &id in &self.touched {
            let v = &self.dense[id as usize];
            if !v.is_zero() {
                self.dense[id as usize] = v.div_exact(&g);
            }
        }
    }

    /// Drain nonzero entries as a canonical primitive sparse row, sorted by
    /// the given key function; `None` for the zero vector.
    fn take_residue(
        &mut self,
        key_of: impl Fn(u32) -> (u64, u64),
    ) -> Option<(Vec<u32>, Vec<C>)> {
        let mut entries: Vec<(u32, C)> = self
            .touched
            .iter()
            .filter(|&&id| !self.dense[id as usize].is_zero())
            .map(|&id| (id, self.dense[id as usize].clone()))
            .collect();
        self.clear();
        if entries.is_empty() {
            return None;
        }
        entries.sort_by_key(|&(id, _)| key_of(id));
        let mut coeffs: Vec<C> = entries.iter().map(|(_, c)| c.clone()).collect();
        C::make_primitive(&mut coeffs);
        if coeffs[0].is_negative() {
            for c in coeffs.iter_mut() {
                *c = c.neg();
            }
        }
        Some((entries.into_iter().map(|(id, _)| id).collect(), coeffs))
    }
}

/// Bracket `[left, right]` of two interned sparse vectors into the workspace.
fn load_bracket<C: Coeff>(
    intern: &mut Intern,
    ws: &mut Workspace<C>,
    left: &Row<C>,
    right: &Row<C>,
) -> Result<(), Overflow> {
    ws.ensure(intern.len().max(1));
    for (aid, ac) in left.ids.iter().zip(left.coeffs.iter()) {
        let a = intern.strings[*aid as usize];
        for (bid, bc) in right.ids.iter().zip(right.coeffs.iter()) {
            let b = intern.strings[*bid as usize];
            if let Some((sign, s)) = a.bracket(&b).expect("interned strings share n") {
                let w = ac
                    .checked_mul(bc)
                    .and_then(|v| v.checked_mul(&C::from_i64(sign as i64)))
                    .ok_or(Overflow)?;
                let id = intern.id(s);
                ws.add(id, &w)?;
            }
        }
    }
    Ok(())
}

/// How far a reduction sweep must go.
#[derive(Copy, Clone, PartialEq, Eq)]
enum ReduceMode {
    /// Stop as soon as the candidate's minimal key falls outside the pivot
    /// set: the partially reduced candidate is a valid new echelon row, and
    /// skipping the remaining eliminations keeps stored rows small.
    InsertLazy,
    /// Eliminate every pivot, producing the fully reduced residue.
    Full,
}

impl<C: Coeff> Kernel<C> {
    fn new() -> Self {
        Kernel { intern: Intern::new(), rows: vec![], by_pivot: BTreeMap::new() }
    }

    fn key_of(&self, id: u32) -> (u64, u64) {
        self.intern.strings[id as usize].key()
    }

    /// Reduce the workspace candidate against the rows, visiting candidate
    /// entries in ascending key order through a lazy min-heap. Eliminating a
    /// pivot only injects strictly larger keys, so the sweep is monotone and
    /// a single pass is complete. Returns `true` when a key outside the
    /// pivot set was encountered (the candidate is not in the span); in
    /// `InsertLazy` mode the sweep stops there.
    fn eliminate(
        &self,
        ws: &mut Workspace<C>,
        skip: Option<(u64, u64)>,
        mode: ReduceMode,
    ) -> Result<bool, Overflow> {
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;
        let mut heap: BinaryHeap<Reverse<((u64, u64), u32)>> = ws
            .touched
            .iter()
            .filter(|&&id| !ws.dense[id as usize].is_zero())
            .map(|&id| Reverse((self.key_of(id), id)))
            .collect();
        let mut fresh = false;
        let mut scale_events = 0u32;
        while let Some(Reverse((key, id))) = heap.pop() {
            if ws.dense[id as usize].is_zero() {
                continue; // stale entry
            }
            if skip == Some(key) {
                continue;
            }
            let row_idx = match self.by_pivot.get(&key) {
                Some(&idx) => idx,
                None => {
                    fresh = true;
                    if mode == ReduceMode::InsertLazy {
                        return Ok(true);
                    }
                    continue;
                }
            };
            let row = &self.rows[row_idx];
            let pid = row.pivot_id();
            debug_assert_eq!(pid, id);
            let c = ws.dense[pid as usize].clone();
            let rp = row.pivot_coeff();
            // Field coefficients subtract (c/rp)*row; ring coefficients run
            // fraction-free, scaling the whole candidate when rp does not
            // divide c.
            let b = if C::FIELD {
                c.div_exact(rp)
            } else {
                let d = c.gcd(rp);
                let a = rp.div_exact(&d); // positive: pivot coefficients are positive
                if a != C::one() {
                    ws.scale_all(&a)?;
                    scale_events += 1;
                }
                c.div_exact(&d)
            };
            for (rid, rc) in row.ids.iter().zip(row.coeffs.iter()) {
                let delta = b.checked_mul(rc).ok_or(Overflow)?;
                let was_zero = {
                    ws.ensure(*rid as usize + 1);
                    ws.dense[*rid as usize].is_zero()
                };
                ws.sub(*rid, &delta)?;
                if was_zero && !ws.dense[*rid as usize].is_zero() && *rid != pid {
                    heap.push(Reverse((self.key_of(*rid), *rid)));
                }
            }
            debug_assert!(ws.dense[pid as usize].is_zero());
            if !C::FIELD && scale_events > 0 && scale_events % 8 == 0 {
                ws.normalize_content();
                scale_events = 1; // keep periodic renormalization armed
            }
        }
        Ok(fresh)
    }

    fn push_row(&mut self, ids: Vec<u32>, coeffs: Vec<C>) -> usize {
        let key = self.key_of(ids[0]);
        let idx = self.rows.len();
        self.rows.push(Row { ids, coeffs });
        let prev = self.by_pivot.insert(key, idx);
        debug_assert!(prev.is_none(), "duplicate pivot");
        idx
    }

    /// Bring all rows into fully reduced (Gauss-Jordan) form and sort them by
    /// pivot key. Reducing each row against the other pivots yields the
    /// unique vector in its coset supported away from every other pivot, so
    /// the outcome is the canonical basis regardless of discovery order.
    /// Rows are independent, so the pass runs in parallel; output order is
    /// fixed by pivot keys.
    fn canonicalize(&mut self, ws: &mut Workspace<C>) -> Result<(), Overflow> {
        let _ = ws;
        use rayon::prelude::*;
        let order: Vec<usize> = self.by_pivot.values().copied().collect();
        let new_rows: Vec<Result<Row<C>, Overflow>> = order
            .par_iter()
            .map(|&idx| {
                let mut ws: Workspace<C> = Workspace::new();
                let own_key = self.key_of(self.rows[idx].pivot_id());
                ws.ensure(self.intern.len().max(1));
                let row = &self.rows[idx];
                for (id, c) in row.ids.iter().zip(row.coeffs.iter()) {
                    ws.add(*id, c)?;
                }
                self.eliminate(&mut ws, Some(own_key), ReduceMode::Full)?;
                let (ids, coeffs) = ws
                    .take_residue(|id| self.key_of(id))
                    .expect("row reduction cannot vanish");
                debug_assert_eq!(self.key_of(ids[0]), own_key);
                Ok(Row { ids, coeffs })
            })
            .collect();
        self.rows = new_rows.into_iter().collect::<Result<Vec<_>, Overflow>>()?;
        self.by_pivot = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| (self.intern.strings[r.pivot_id() as usize].key(), i))
            .collect();
        Ok(())
    }

    fn row_to_element(&self, idx: usize, n: usize) -> Element {
        let row = &self.rows[idx];
        Element::from_terms(
            n,
            row.ids.iter().zip(row.coeffs.iter()).map(|(id, c)| {
                (
                    self.intern.strings[*id as usize],
                    BigRational::from_integer(c.to_bigint()),
                )
            }),
        )
    }
}

/// Compute the Lie closure of a generator set (default schedule).
pub fn close(
    generators: &[Element],
    budget: Option<Budget>,
) -> Result<(DlaBasis, ClosureReport), ClosureError> {
    close_with(generators, budget, BracketSchedule::default())
}

/// Compute the Lie closure with an explicit bracket schedule.
///
/// The pipeline is exact end to end. A prime-field discovery pass finds the
/// span and canonical pivot structure without intermediate coefficient
/// swell; the canonical rows are then lifted by rational reconstruction and
/// certified exactly: every generator must reduce to zero against the
/// lifted basis, and so must the bracket of every generator with every
/// basis row, which together pin the basis to the true closure (the mod-p
/// rank bounds the dimension from below, the verified bracket-invariance
/// bounds it from above). Any reconstruction or certification failure falls
/// back to the fraction-free integer kernel.
pub fn close_with(
    generators: &[Element],
    budget: Option<Budget>,
    schedule: BracketSchedule,
) -> Result<(DlaBasis, ClosureReport), ClosureError> {
    let n = check_generators(generators)?;
    let budget = budget.unwrap_or_default();
    let start = Instant::now();

    let (fp_kernel, mut report) = run_closure::<Fp>(generators, n, &budget, schedule, start)
        .unwrap_or_else(|_| unreachable!("prime-field kernel cannot overflow"));
    if !report.exact {
        // Budget stop: the certified product is the dimension lower bound;
        // the rows remain a modular span witness.
        report.wall_time_seconds = start.elapsed().as_secs_f64();
        return Ok((
            DlaBasis { n, store: Store::Modular(fp_kernel), exact: false, provenance: String::new() },
            report,
        ));
    }
    match lift_and_verify(fp_kernel, true, generators, n) {
        Ok(store) => {
            report.wall_time_seconds = start.elapsed().as_secs_f64();
            return Ok((
                DlaBasis { n, store, exact: true, provenance: String::new() },
                report,
            ));
        }
        Err(_) => {
            // Unlucky prime or oversized entries: redo everything exactly.
        }
    }

    match run_closure::<i128>(generators, n, &budget, schedule, start) {
        Ok((kernel, report)) => Ok((
            DlaBasis {
                n,
                store: Store::Small(kernel),
                exact: report.exact,
                provenance: String::new(),
            },
            report,
        )),
        Err(Overflow) => {
            let (kernel, report) = run_closure::<BigInt>(generators, n, &budget, schedule, start)
                .unwrap_or_else(|_| unreachable!("big-integer kernel cannot overflow"));
            Ok((
                DlaBasis {
                    n,
                    store: Store::Big(kernel),
                    exact: report.exact,
                    provenance: String::new(),
                },
                report,
            ))
        }
    }
}

/// Failure of the modular lift; callers retry with the exact kernel.
struct LiftError;

/// Lift a prime-field kernel to exact integer rows and certify the result.
///
/// Rows arrive monic mod p from the discovery pass. Each entry is rationally
/// reconstructed, each row cleared to a primitive integer vector, and (for
/// completed closures) the lifted basis is certified by exact reductions:
/// the generators and all `[generator, row]` brackets must vanish against
/// it. A certified basis equals the true closure: the mod-p rank of genuine
/// algebra elements gives `dim >= d`, and bracket-invariance of the lifted
/// span gives `dim <= d`.
fn lift_and_verify(
    fp: Kernel<Fp>,
    completed: bool,
    generators: &[Element],
    n: usize,
) -> Result<Store, LiftError> {
    let bound = 1u64 << 30;
    let mut rows: Vec<Row<i128>> = Vec::with_capacity(fp.rows.len());
    for row in &fp.rows {
        let mut nums: Vec<i128> = Vec::with_capacity(row.len());
        let mut dens: Vec<u64> = Vec::with_capacity(row.len());
        let mut lcm: u64 = 1;
        for c in &row.coeffs {
            let (num, den) =
                crate::scalar::rational_reconstruct(c.value(), FP_P, bound).ok_or(LiftError)?;
            nums.push(num as i128);
            dens.push(den);
            let g = num::integer::gcd(lcm, den);
            lcm = lcm.checked_mul(den / g).ok_or(LiftError)?;
        }
        let mut coeffs: Vec<i128> = nums
            .iter()
            .zip(&dens)
            .map(|(&num, &den)| num * (lcm / den) as i128)
            .collect();
        <i128 as Coeff>::make_primitive(&mut coeffs);
        if coeffs[0].is_negative() {
            for c in coeffs.iter_mut() {
                *c = -*c;
            }
        }
        rows.push(Row { ids: row.ids.clone(), coeffs });
    }
    let kernel = Kernel {
        by_pivot: fp.by_pivot.clone(),
        intern: fp.intern,
        rows,
    };
    if completed {
        verify_closed(&kernel, generators, n)?;
    }
    Ok(Store::Small(kernel))
}

/// Exact certification of a lifted basis; see [`lift_and_verify`].
fn verify_closed(kernel: &Kernel<i128>, generators: &[Element], n: usize) -> Result<(), LiftError> {
    let _ = n;
    let mut ws: Workspace<i128> = Workspace::new();
    let gen_rows: Vec<Row<i128>> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let terms = element_to_int_terms::<i128>(g).map_err(|_| LiftError)?;
            let mut entries: Vec<(u32, i128)> = terms
                .iter()
                .map(|(s, c)| {
                    let id = kernel.intern.lookup(s).ok_or(LiftError)?;
                    Ok((id, *c))
                })
                .collect::<Result<_, LiftError>>()?;
            entries.sort_by_key(|&(id, _)| kernel.key_of(id));
            Ok(Row {
                ids: entries.iter().map(|e| e.0).collect(),
                coeffs: entries.iter().map(|e| e.1).collect(),
            })
        })
        .collect::<Result<_, LiftError>>()?;

    // Generators lie in the span.
    for g in &gen_rows {
        ws.ensure(kernel.intern.len().max(1));
        for (id, c) in g.ids.iter().zip(g.coeffs.iter()) {
            ws.add(*id, c).map_err(|_| LiftError)?;
        }
        let fresh = kernel
            .eliminate(&mut ws, None, ReduceMode::Full)
            .map_err(|_| LiftError)?;
        let residue = ws.take_residue(|id| kernel.key_of(id));
        if fresh || residue.is_some() {
            return Err(LiftError);
        }
    }
    // The span is invariant under every ad_generator, which certifies that
    // it contains (hence equals) the closure. A bracket term at a string
    // outside the basis support cannot cancel, so an intern miss is a
    // failure. Rows verify independently, in parallel.
    use rayon::prelude::*;
    let ok = kernel.rows.par_iter().try_for_each(|row| {
        let mut ws: Workspace<i128> = Workspace::new();
        for g in &gen_rows {
            ws.ensure(kernel.intern.len().max(1));
            for (aid, ac) in g.ids.iter().zip(g.coeffs.iter()) {
                let a = kernel.intern.strings[*aid as usize];
                for (bid, bc) in row.ids.iter().zip(row.coeffs.iter()) {
                    let b = kernel.intern.strings[*bid as usize];
                    if let Some((sign, s)) = a.bracket(&b).expect("same qubit count") {
                        let id = kernel.intern.lookup(&s).ok_or(())?;
                        let w = Coeff::checked_mul(ac, bc)
                            .and_then(|v| Coeff::checked_mul(&v, &(sign as i128)))
                            .ok_or(())?;
                        ws.add(id, &w).map_err(|_| ())?;
                    }
                }
            }
            let fresh = kernel.eliminate(&mut ws, None, ReduceMode::Full).map_err(|_| ())?;
            let residue = ws.take_residue(|id| kernel.key_of(id));
            if fresh || residue.is_some() {
                return Err(());
            }
        }
        Ok(())
    });
    ok.map_err(|()| LiftError)
}

/// Experimental: run the discovery pass over the prime field and report
/// `(dimension, max |num| and den of reconstructed entries, #failures, secs)`.
#[doc(hidden)]
pub fn close_modp_experiment(
    generators: &[Element],
    budget: Option<Budget>,
) -> Result<(usize, u64, u64, usize, f64), ClosureError> {
    use crate::scalar::{rational_reconstruct, Fp, FP_P};
    let n = check_generators(generators)?;
    let budget = budget.unwrap_or_default();
    let start = Instant::now();
    let (kernel, report) =
        run_closure::<Fp>(generators, n, &budget, BracketSchedule::Generators, start)
            .unwrap_or_else(|_| unreachable!("prime-field kernel cannot overflow"));
    let mut max_num = 0u64;
    let mut max_den = 0u64;
    let mut failures = 0usize;
    let bound = 1u64 << 30;
    for row in &kernel.rows {
        for c in &row.coeffs {
            match rational_reconstruct(c.value(), FP_P, bound) {
                Some((num, den)) => {
                    max_num = max_num.max(num.unsigned_abs());
                    max_den = max_den.max(den);
                }
                None => failures += 1,
            }
        }
    }
    Ok((report.dimension, max_num, max_den, failures, report.wall_time_seconds))
}

fn check_generators(generators: &[Element]) -> Result<usize, ClosureError> {
    let mut n = None;
    for g in generators {
        if let Some(prev) = n {
            if g.n() != prev {
                return Err(ClosureError::QubitMismatch { left: prev, right: g.n() });
            }
        } else {
            n = Some(g.n());
        }
    }
    match n {
        Some(n) if generators.iter().any(|g| !g.is_zero()) => Ok(n),
        _ => Err(ClosureError::NoGenerators),
    }
}

fn element_to_int_terms<C: Coeff>(e: &Element) -> Result<Vec<(PauliString, C)>, Overflow> {
    let prim = e.canonical_primitive().expect("nonzero by construction");
    prim.terms()
        .iter()
        .map(|(s, c)| {
            debug_assert!(c.is_integer());
            let converted = C::from_bigint(&c.to_integer()).ok_or(Overflow)?;
            Ok((*s, converted))
        })
        .collect()
}

fn run_closure<C: Coeff>(
    generators: &[Element],
    n: usize,
    budget: &Budget,
    schedule: BracketSchedule,
    start: Instant,
) -> Result<(Kernel<C>, ClosureReport), Overflow> {
    let mut kernel: Kernel<C> = Kernel::new();
    let mut ws: Workspace<C> = Workspace::new();
    let mut brackets: u64 = 0;

    // Brackets of non-identity strings never produce the identity, so the
    // reachable dimension is capped by the traceless string count unless a
    // generator itself carries a trace component.
    let has_identity = generators.iter().any(|g| g.has_identity_component());
    let ambient = 1usize.checked_shl(2 * n as u32).unwrap_or(usize::MAX);
    let dim_cap = if has_identity { ambient } else { ambient.saturating_sub(1) };

    let mut frontier: VecDeque<usize> = VecDeque::new();
    for g in generators {
        if g.is_zero() {
            continue;
        }
        let terms = element_to_int_terms::<C>(g)?;
        ws.ensure(kernel.intern.len().max(1));
        for (s, c) in &terms {
            let id = kernel.intern.id(*s);
            ws.add(id, c)?;
        }
        kernel.eliminate(&mut ws, None, ReduceMode::InsertLazy)?;
        if let Some((ids, coeffs)) = ws.take_residue(|id| kernel.key_of(id)) {
            let idx = kernel.push_row(ids, coeffs);
            frontier.push_back(idx);
        }
    }
    let seed_count = kernel.rows.len();

    let mut exact = true;
    'outer: while let Some(u_idx) = frontier.pop_front() {
        if kernel.rows.len() >= dim_cap {
            break; // ambient space saturated: the closure is complete
        }
        if budget.max_dim.is_some_and(|m| kernel.rows.len() >= m) {
            exact = false;
            break;
        }
        let partner_count = match schedule {
            BracketSchedule::Generators => seed_count,
            BracketSchedule::FullBasis => kernel.rows.len(),
        };
        for p_idx in 0..partner_count {
            if budget.max_brackets.is_some_and(|m| brackets >= m) {
                exact = false;
                break 'outer;
            }
            if let Some(max_seconds) = budget.max_seconds {
                if brackets % 64 == 0 && start.elapsed().as_secs_f64() > max_seconds {
                    exact = false;
                    break 'outer;
                }
            }
            brackets += 1;
            {
                let rows = &kernel.rows;
                load_bracket(&mut kernel.intern, &mut ws, &rows[p_idx], &rows[u_idx])?;
            }
            kernel.eliminate(&mut ws, None, ReduceMode::InsertLazy)?;
            if let Some((ids, coeffs)) = ws.take_residue(|id| kernel.key_of(id)) {
                let idx = kernel.push_row(ids, coeffs);
                frontier.push_back(idx);
                if kernel.rows.len() >= dim_cap {
                    break;
                }
                if budget.max_dim.is_some_and(|m| kernel.rows.len() >= m) {
                    exact = false;
                    break 'outer;
                }
            }
        }
    }

    if exact {
        // Canonical form is only meaningful for completed closures; a
        // budget-stopped basis is a span witness whose dimension is the
        // certified product.
        kernel.canonicalize(&mut ws)?;
    }
    let report = ClosureReport {
        dimension: kernel.rows.len(),
        exact,
        brackets_evaluated: brackets,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    };
    Ok((kernel, report))
}

impl DlaBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        match &self.store {
            Store::Small(k) => k.rows.len(),
            Store::Big(k) => k.rows.len(),
            Store::Modular(k) => k.rows.len(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Rows as exact elements, ascending pivot order.
    pub fn rows(&self) -> Vec<Element> {
        (0..self.dimension()).map(|i| self.row(i)).collect()
    }

    /// For a budget-limited basis the coefficients are best-effort rational
    /// reconstructions of the modular witness, not certified exact values.
    pub fn row(&self, idx: usize) -> Element {
        match &self.store {
            Store::Small(k) => k.row_to_element(idx, self.n),
            Store::Big(k) => k.row_to_element(idx, self.n),
            Store::Modular(k) => {
                let row = &k.rows[idx];
                Element::from_terms(
                    self.n,
                    row.ids.iter().zip(row.coeffs.iter()).map(|(id, c)| {
                        let coeff = match crate::scalar::rational_reconstruct(c.value(), FP_P, 1 << 30)
                        {
                            Some((num, den)) => BigRational::new(num.into(), BigInt::from(den)),
                            None => BigRational::from_integer(BigInt::from(c.value())),
                        };
                        (k.intern.strings[*id as usize], coeff)
                    }),
                )
            }
        }
    }

    /// Pivot string of each row, ascending.
    pub fn pivots(&self) -> Vec<PauliString> {
        match &self.store {
            Store::Small(k) => k.rows.iter().map(|r| k.intern.strings[r.pivot_id() as usize]).collect(),
            Store::Big(k) => k.rows.iter().map(|r| k.intern.strings[r.pivot_id() as usize]).collect(),
            Store::Modular(k) => k.rows.iter().map(|r| k.intern.strings[r.pivot_id() as usize]).collect(),
        }
    }

    /// Reduce `elem` against the rows: `(member, residual)`.
    pub fn membership(&self, elem: &Element) -> Result<(bool, Element), ClosureError> {
        if elem.n() != self.n {
            return Err(ClosureError::QubitMismatch { left: self.n, right: elem.n() });
        }
        if elem.is_zero() {
            return Ok((true, Element::zero(self.n)));
        }
        let residual = match &self.store {
            Store::Small(k) => reduce_against(k, elem, self.n),
            Store::Big(k) => reduce_against(k, elem, self.n),
            Store::Modular(k) => {
                // Confirm-only semantics: a vanishing modular residue backs
                // a membership claim against a lower-bound basis.
                return Ok(modular_membership(k, elem, self.n));
            }
        };
        Ok((residual.is_zero(), residual))
    }

    pub fn contains(&self, elem: &Element) -> Result<bool, ClosureError> {
        Ok(self.membership(elem)?.0)
    }

    /// True iff both bases are exact and have identical canonical rows.
    pub fn equal_span(&self, other: &DlaBasis) -> Result<bool, ClosureError> {
        if !self.exact || !other.exact {
            return Err(ClosureError::InexactBasis);
        }
        if self.n != other.n || self.dimension() != other.dimension() {
            return Ok(false);
        }
        for i in 0..self.dimension() {
            if !rows_equal(self, other, i) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff every row of `self` reduces to zero against `other`.
    pub fn subspace_of(&self, other: &DlaBasis) -> Result<bool, ClosureError> {
        if !other.exact || !self.exact {
            return Err(ClosureError::InexactBasis);
        }
        if self.n != other.n {
            return Err(ClosureError::QubitMismatch { left: self.n, right: other.n });
        }
        for i in 0..self.dimension() {
            if !other.contains(&self.row(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// JSON export: a list of rows, each a list of `[num, den, pauli_text]`.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (0..self.dimension())
            .map(|i| {
                let row = self.row(i);
                serde_json::Value::Array(
                    row.terms()
                        .iter()
                        .map(|(s, c)| {
                            serde_json::json!([
                                c.numer().to_string(),
                                c.denom().to_string(),
                                s.to_string()
                            ])
                        })
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({
            "n": self.n,
            "dimension": self.dimension(),
            "exact": self.exact,
            "provenance": self.provenance,
            "rows": rows,
        })
    }
}

fn rows_equal(a: &DlaBasis, b: &DlaBasis, idx: usize) -> bool {
    if let (Store::Small(ka), Store::Small(kb)) = (&a.store, &b.store) {
        let ra = &ka.rows[idx];
        let rb = &kb.rows[idx];
        if ra.len() != rb.len() {
            return false;
        }
        return ra
            .ids
            .iter()
            .zip(&ra.coeffs)
            .zip(rb.ids.iter().zip(&rb.coeffs))
            .all(|((ia, ca), (ib, cb))| {
                ka.intern.strings[*ia as usize] == kb.intern.strings[*ib as usize] && ca == cb
            });
    }
    a.row(idx) == b.row(idx)
}

/// Membership claim against a modular (lower-bound) basis: reduce the
/// element's residues mod p; a vanishing residue confirms membership with
/// overwhelming probability, a surviving one refutes nothing either way,
/// which matches the weak contract of lower-bound bases.
fn modular_membership(kernel: &Kernel<Fp>, elem: &Element, n: usize) -> (bool, Element) {
    let mut ws: Workspace<Fp> = Workspace::new();
    ws.ensure(kernel.intern.len().max(1));
    let prim = match elem.canonical_primitive() {
        Ok(p) => p,
        Err(_) => return (true, Element::zero(n)),
    };
    let mut alien = vec![];
    for (s, c) in prim.terms() {
        match kernel.intern.lookup(s) {
            Some(id) => {
                let value = Fp::from_bigint_value(&c.to_integer());
                if ws.add(id, &value).is_err() {
                    unreachable!("prime field cannot overflow");
                }
            }
            None => alien.push((*s, c.clone())),
        }
    }
    let _ = kernel.eliminate(&mut ws, None, ReduceMode::Full);
    let residue = ws.take_residue(|id| kernel.key_of(id));
    let member = alien.is_empty() && residue.is_none();
    let mut terms = alien;
    if let Some((ids, coeffs)) = residue {
        terms.extend(ids.iter().zip(coeffs.iter()).map(|(id, c)| {
            (
                kernel.intern.strings[*id as usize],
                BigRational::from_integer(BigInt::from(c.value())),
            )
        }));
    }
    (member, Element::from_terms(n, terms))
}

fn reduce_against<C: Coeff>(kernel: &Kernel<C>, elem: &Element, n: usize) -> Element {
    use num::Zero;
    // Strings outside the intern table can never be touched by elimination,
    // so they pass straight into the residual.
    let mut dense: HashMap<u32, BigRational> = HashMap::new();
    let mut alien: Vec<(PauliString, BigRational)> = vec![];
    for (s, c) in elem.terms() {
        match kernel.intern.lookup(s) {
            Some(id) => {
                dense.insert(id, c.clone());
            }
            None => alien.push((*s, c.clone())),
        }
    }
    for (_, &row_idx) in kernel.by_pivot.iter() {
        let row = &kernel.rows[row_idx];
        let pid = row.pivot_id();
        let c = match dense.get(&pid) {
            Some(c) if !Zero::is_zero(c) => c.clone(),
            _ => continue,
        };
        let factor = c / BigRational::from_integer(row.pivot_coeff().to_bigint());
        for (id, rc) in row.ids.iter().zip(row.coeffs.iter()) {
            let delta = &factor * BigRational::from_integer(rc.to_bigint());
            let slot = dense.entry(*id).or_insert_with(|| Zero::zero());
            *slot -= delta;
        }
    }
    let mut terms = alien;
    terms.extend(dense.into_iter().filter_map(|(id, c)| {
        if Zero::is_zero(&c) {
            None
        } else {
            Some((kernel.intern.strings[id as usize], c))
        }
    }));
    let residual = Element::from_terms(n, terms);
    if residual.is_zero() {
        residual
    } else {
        residual.canonical_primitive().expect("nonzero residual")
    }
}
