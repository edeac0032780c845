'''
Command line front end. Every command builds a report document which the
configured renderer prints to stdout; diagnostics go to stderr. Exit status
is 0 when every verdict holds, 1 when a verification fails and 2 for usage,
parse and domain errors.
'''

import argparse
from fractions import Fraction
import math
import re
import sys

import numpy as np

from .typings import Any, Mapping, Optional, Sequence, ReportDocument, Verdict
from .util import (
	logger, parse_halfint, parse_basis, SpinCoupleError, DomainError,
	DivisionByZero, ZeroVector
)
from .config import DefaultConfig, load_config
from .exactnum import rational_text
from .linalg import ExactVector
from .spinops import verify_photon_operators, verify_single_photon_actions
from .coupling import (
	ProductSpace, CoupledState, FloatTotalSpinOperators, total_operators,
	coupled_eigenbasis, float_coupled_eigenbasis, cg_vector,
	eigenvalue_table, verify_eigenstate, solve_superposition_ansatz,
	clebsch_gordan, cg_state, dual_path_check, cg_orthonormality,
	total_probability
)
from .entangle import (
	schmidt_analyze, schmidt_rank, exchange_parity, classify_paper_states,
	bell_states, bell_vectors, bell_span_dimension
)
from .ketlang import EvalContext, parse, evaluate, format as format_ket
from .catalog import (
	PAIR_STATES, CANDIDATES, ANSATZ_CASES, ELECTRON_STATES, SCHMIDT_RANKS,
	find_state, state_spins
)
from .report import Renderer, new_document, finish_document, verdict
from . import defaults

# argparse only takes -N and -N.M as negative numbers, not -N/M
NEGATIVE_FRACTION = re.compile(r"-\d+/\d+")

def _halfint(text: str) -> Fraction:
	try:
		return parse_halfint(text)
	except (DomainError, DivisionByZero) as e:
		raise argparse.ArgumentTypeError(str(e)) from None

def _relative_sign(a: ExactVector, b: ExactVector) -> int:
	'''+1 or -1 when a = +-b exactly, 0 otherwise.'''
	if a == b:
		return 1
	if a == -b:
		return -1
	return 0

def _state_row(state: CoupledState, ctx: EvalContext) -> dict[str, Any]:
	return dict(
		S=state.S,
		mu=state.mu,
		state=format_ket(state.vector, ctx),
		components=[str(z) for z in state.vector.values()],
		exchange_parity=state.exchange_parity,
		schmidt_rank=schmidt_rank(state.vector, ctx.j1.dim, ctx.j2.dim)
	)

def _schmidt_record(v: ExactVector, d1: int, d2: int) -> tuple[dict[str, Any], Verdict]:
	analysis = schmidt_analyze(v, d1, d2)
	record = dict(
		rank=analysis.rank,
		coefficients=list(analysis.coefficients),
		exact_coefficients=None if analysis.exact_coefficients is None else [
			str(c) for c in analysis.exact_coefficients
		],
		entropy=analysis.entropy,
		is_product=analysis.is_product
	)
	check = verdict(
		"exact and floating Schmidt ranks agree",
		analysis.numeric_rank == analysis.rank,
		detail=f"exact {analysis.rank}, floating {analysis.numeric_rank}"
	)
	return record, check

def cmd_couple(args: argparse.Namespace, config: Mapping) -> ReportDocument:
	'''Coupled basis, S^2 spectrum and Clebsch-Gordan cross-check for j1, j2.'''

	basis = config["basis"]
	space = ProductSpace.of(args.j1, args.j2, basis)
	doc = new_document("couple", dict(j1=space.j1.j, j2=space.j2.j, basis=basis, float_fallback=args.float_fallback))

	for name, j in (("j1", space.j1), ("j2", space.j2)):
		if j.twice > defaults.MAX_TWICE_J:
			raise DomainError(f"{name} = {j} exceeds {defaults.MAX_TWICE_J}/2")
	ops = total_operators(space.in_basis("standard_m"), args.float_fallback)
	if isinstance(ops, FloatTotalSpinOperators):
		return _couple_float(doc, space, ops, config)
	states = coupled_eigenbasis(space)
	ctx = EvalContext.of(space.j1, space.j2, basis)
	table = eigenvalue_table(ops)
	dual = dual_path_check(space)

	doc["results"] = dict(
		space=dict(
			dim=space.dim,
			admissible_S=space.admissible_S(),
			order="S descending, then mu descending"
		),
		arithmetic="exact",
		states=[_state_row(s, ctx) for s in states],
		eigenvalues=[r._asdict() for r in table],
		clebsch_gordan=dict(
			entries_compared=len(dual.rows),
			multiplet_signs={rational_text(S): sign for S, sign in dual.signs.items()}
		)
	)
	total = sum(r.multiplicity for r in table)
	doc["verdicts"] += [
		verdict("[S^2, Sz] = 0", ops.commute()),
		verdict("S^2 multiplicities sum to the dimension", total == space.dim, detail=f"{total} of {space.dim}"),
		verdict("coupled states match the Clebsch-Gordan table up to one sign per S", dual.passed),
	]
	return finish_document(doc, config["timestamps"])

def _couple_float(doc: ReportDocument, space: ProductSpace, ops: FloatTotalSpinOperators, config: Mapping) -> ReportDocument:
	'''Double-precision variant of `cmd_couple`, compared per state with the Clebsch-Gordan table up to sign.'''

	states = float_coupled_eigenbasis(space)
	table = eigenvalue_table(ops)
	rows = []
	for s in states:
		cg = cg_vector(space, s.S, s.mu)
		deviation = min(np.linalg.norm(s.vector - cg), np.linalg.norm(s.vector + cg))
		rows.append(dict(
			S=s.S,
			mu=s.mu,
			components=list(s.vector),
			exchange_parity=s.exchange_parity,
			cg_deviation=float(deviation)
		))
	worst = max(r["cg_deviation"] for r in rows)

	doc["results"] = dict(
		space=dict(
			dim=space.dim,
			admissible_S=space.admissible_S(),
			order="S descending, then mu descending"
		),
		arithmetic="float",
		states=rows,
		eigenvalues=[r._asdict() for r in table],
		clebsch_gordan=dict(states_compared=len(rows), max_deviation=worst)
	)
	total = sum(r.multiplicity for r in table)
	doc["verdicts"] += [
		verdict("[S^2, Sz] = 0", ops.commute()),
		verdict("S^2 multiplicities sum to the dimension", total == space.dim, detail=f"{total} of {space.dim}"),
		verdict(
			"coupled states match the Clebsch-Gordan table up to sign",
			worst <= defaults.FLOAT_TOLERANCE,
			detail=f"max deviation {worst:.1e}"
		),
	]
	return finish_document(doc, config["timestamps"])

def cmd_cg(args: argparse.Namespace, config: Mapping) -> ReportDocument:
	'''Exact Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M>.'''

	for name in ("j1", "j2", "J"):
		if 2*getattr(args, name) > defaults.MAX_TWICE_J:
			raise DomainError(f"{name} = {rational_text(getattr(args, name))} exceeds {defaults.MAX_TWICE_J}/2")

	c = clebsch_gordan(args.j1, args.m1, args.j2, args.m2, args.J, args.M)
	doc = new_document("cg", dict(j1=c.j1, m1=c.m1, j2=c.j2, m2=c.m2, J=c.J, M=c.M))
	doc["results"] = dict(value=c.value, approx=c.value.to_float())
	return finish_document(doc, config["timestamps"])

def cmd_verify(args: argparse.Namespace, config: Mapping) -> ReportDocument:
	'''Check whether an expression is a simultaneous S^2, Sz eigenstate.'''

	basis = config["basis"]
	ctx = EvalContext.of(args.j1, args.j2, basis)
	v = evaluate(parse(args.expr), ctx)
	if v.is_zero():
		raise ZeroVector("The expression evaluates to the zero vector")

	ops = total_operators(ProductSpace.of(args.j1, args.j2, basis))
	result = verify_eigenstate(ops, v, args.S, args.mu)
	doc = new_document("verify", dict(
		expr=args.expr, S=result.S, mu=result.mu, j1=ctx.j1.j, j2=ctx.j2.j, basis=basis
	))

	s2_residual = format_ket(result.s2_residual, ctx)
	sz_residual = format_ket(result.sz_residual, ctx)
	doc["results"] = dict(
		state=format_ket(v, ctx),
		normalized=v.is_normalized(),
		s2_residual=s2_residual,
		sz_residual=sz_residual
	)
	doc["verdicts"].append(verdict(
		f"eigenstate with S = {rational_text(result.S)}, mu = {rational_text(result.mu)}",
		result.passed,
		detail="" if result.passed else f"S^2 residual {s2_residual}; Sz residual {sz_residual}"
	))
	return finish_document(doc, config["timestamps"])

def cmd_entangle(args: argparse.Namespace, config: Mapping) -> ReportDocument:
	'''Schmidt decomposition and exchange parity of one state.'''

	given = [x for x in (args.expr, args.paper_state, args.bell) if x is not None]
	if len(given) != 1:
		raise DomainError("Give exactly one of an expression, --paper-state or --bell")

	extra = {}
	if args.bell is not None:
		state = {b.label: b for b in bell_states()}[args.bell]
		ctx = EvalContext.of(1, 1)
		v = state.standard
		inputs = dict(bell=args.bell, axes="H along x, V along y")
		extra = dict(
			cartesian_components=[str(z) for z in state.cartesian.values()],
			decomposition=[a._asdict() for a in state.decomposition],
			total_probability=total_probability(state.decomposition)
		)
	elif args.paper_state is not None:
		entry = find_state(args.paper_state)
		ctx = EvalContext.of(*state_spins(entry))
		v = evaluate(parse(entry.text), ctx)
		inputs = dict(paper_state=entry.label, S=entry.S, mu=entry.mu)
	else:
		basis = config["basis"]
		ctx = EvalContext.of(args.j1, args.j2, basis)
		v = evaluate(parse(args.expr), ctx)
		inputs = dict(expr=args.expr, j1=ctx.j1.j, j2=ctx.j2.j, basis=basis)

	d1, d2 = ctx.j1.dim, ctx.j2.dim
	doc = new_document("entangle", inputs)
	schmidt, check = _schmidt_record(v, d1, d2)
	doc["results"] = dict(
		state=format_ket(v, ctx),
		schmidt=schmidt,
		entropy_unit="nats",
		exchange_parity=exchange_parity(v, d1) if d1 == d2 else None,
		**extra
	)
	doc["verdicts"].append(check)
	return finish_document(doc, config["timestamps"])

def _photon_operator_section(doc: ReportDocument):
	for section, checks in (
		("operators", verify_photon_operators()),
		("single_photon_actions", verify_single_photon_actions())
	):
		doc["results"][section] = [dict(check=c.name, passed=c.passed) for c in checks]
		doc["verdicts"] += [verdict(f"{section}: {c.name}", c.passed, detail=c.detail) for c in checks]

def _candidate_section(doc: ReportDocument):
	ctx = EvalContext.of(1, 1, "cartesian")
	ops = total_operators(ProductSpace.of(1, 1, "cartesian"))
	rows = []
	for cand in CANDIDATES:
		v = evaluate(parse(cand.text), ctx)
		result = verify_eigenstate(ops, v, cand.S, cand.mu)
		s2_residual = format_ket(result.s2_residual, ctx)
		rows.append(dict(
			label=cand.label, S=cand.S, mu=cand.mu, state=cand.text,
			observed="PASS" if result.passed else "FAIL", s2_residual=s2_residual
		))
		doc["verdicts"].append(verdict(
			f"candidate {cand.label} is |{rational_text(cand.S)}, {rational_text(cand.mu)}>",
			result.passed, cand.expected_pass,
			detail="" if result.passed else f"S^2 residual {s2_residual}"
		))
	doc["results"]["candidates"] = rows

def _ansatz_section(doc: ReportDocument, ctx: EvalContext, ops):
	rows = []
	for case in ANSATZ_CASES:
		candidates = [evaluate(parse(text), ctx) for text in case.candidates]
		solution = solve_superposition_ansatz(ops, candidates, case.S, case.mu)
		ratio = solution.ratio()
		target = evaluate(parse(find_state(case.label).text), ctx)
		rows.append(dict(
			label=case.label, S=case.S, mu=case.mu,
			coefficients=[str(c) for c in solution.coefficients],
			ratio=ratio, state=format_ket(solution.state.vector, ctx)
		))
		doc["verdicts"] += [
			verdict(f"ansatz {case.label}: a/b = {rational_text(case.ratio)}", ratio == case.ratio, detail=f"a/b = {ratio}"),
			verdict(
				f"ansatz {case.label} reproduces {case.label} up to sign",
				_relative_sign(solution.state.vector, target) != 0
			),
		]
	doc["results"]["ansatz"] = rows

def _states_section(doc: ReportDocument, ctx: EvalContext, ops):
	space = ProductSpace.of(1, 1)
	eigen = {(s.S, s.mu): s for s in coupled_eigenbasis(space)}
	rows = []
	for entry in PAIR_STATES:
		v = evaluate(parse(entry.text), ctx)
		eigen_sign = _relative_sign(eigen[entry.S, entry.mu].vector, v)
		cg_sign = _relative_sign(cg_state(space, entry.S, entry.mu).vector, v)
		rows.append(dict(
			label=entry.label, S=entry.S, mu=entry.mu, state=format_ket(v, ctx),
			normalized=v.is_normalized(), eigensolver_sign=eigen_sign, clebsch_gordan_sign=cg_sign
		))
		doc["verdicts"] += [
			verdict(f"{entry.label} is |{rational_text(entry.S)}, {rational_text(entry.mu)}>", verify_eigenstate(ops, v, entry.S, entry.mu).passed),
			verdict(f"{entry.label} matches the eigensolver up to sign", eigen_sign != 0),
			verdict(f"{entry.label} matches the Clebsch-Gordan table up to sign", cg_sign != 0),
		]
	doc["results"]["states"] = rows

	basis = list(eigen.values())
	orthonormal = all(
		a.vector.inner(b.vector) == int(i == k)
		for i, a in enumerate(basis) for k, b in enumerate(basis)
	)
	dual = dual_path_check(space)
	orth = cg_orthonormality(1, 1)
	doc["verdicts"] += [
		verdict("photon coupled basis is orthonormal", orthonormal),
		verdict("photon coupled basis equals the Clebsch-Gordan table per multiplet", dual.passed),
		verdict(
			"photon Clebsch-Gordan orthonormality",
			orth.max_deviation <= defaults.ORTHONORMALITY_TOLERANCE,
			detail=f"exact={orth.exact}, sums={orth.pairs_checked}, max deviation {orth.max_deviation:.1e}"
		),
	]

	table = eigenvalue_table(ops)
	doc["results"]["eigenvalues"] = [r._asdict() for r in table]
	spectrum = {r.eigenvalue: r.multiplicity for r in table}
	doc["verdicts"].append(verdict(
		"S^2 eigenvalues 6, 2, 0 with multiplicities 5, 3, 1",
		spectrum == {6: 5, 2: 3, 0: 1},
		detail=", ".join(f"{rational_text(k)}: {v}" for k, v in spectrum.items())
	))

def _classification_section(doc: ReportDocument):
	rows = classify_paper_states()
	doc["results"]["classification"] = [r._asdict() for r in rows]
	for r in rows:
		parity = 1 if r.S % 2 == 0 else -1
		doc["verdicts"] += [
			verdict(f"{r.label} has Schmidt rank {SCHMIDT_RANKS[r.label]}", r.schmidt_rank == SCHMIDT_RANKS[r.label], detail=f"rank {r.schmidt_rank}"),
			verdict(f"{r.label} has exchange parity {parity:+d}", r.exchange_parity == parity),
		]
	entangled = sum(not r.is_product for r in rows)
	s6 = next(r for r in rows if r.label == "S6")
	doc["verdicts"] += [
		verdict("seven of the nine states are entangled", entangled == 7, detail=f"{entangled} entangled"),
		verdict("S6 entropy is ln 3", abs(s6.entropy - math.log(3)) < 1e-10, detail=f"{s6.entropy!r}"),
	]

def _electron_section(doc: ReportDocument):
	space = ProductSpace.of("1/2", "1/2")
	ctx = EvalContext.of("1/2", "1/2")
	states = coupled_eigenbasis(space)
	eigen = {(s.S, s.mu): s for s in states}
	rows = []
	for entry in ELECTRON_STATES:
		v = evaluate(parse(entry.text), ctx)
		sign = _relative_sign(eigen[entry.S, entry.mu].vector, v)
		rows.append(dict(
			label=entry.label, S=entry.S, mu=entry.mu, state=format_ket(v, ctx),
			eigensolver_sign=sign, schmidt_rank=schmidt_rank(v, 2, 2),
			exchange_parity=exchange_parity(v, 2)
		))
		doc["verdicts"].append(verdict(f"{entry.label} matches the eigensolver up to sign", sign != 0))

	spectrum = {r.eigenvalue: r.multiplicity for r in eigenvalue_table(total_operators(space))}
	doc["results"]["electrons"] = dict(
		coupled_basis=[_state_row(s, ctx) for s in states],
		states=rows
	)
	doc["verdicts"] += [
		verdict("electron S^2 eigenvalues 2, 0 with multiplicities 3, 1", spectrum == {2: 3, 0: 1}),
		verdict("electron coupled basis equals the Clebsch-Gordan table per multiplet", dual_path_check(space).passed),
	]

def _bell_section(doc: ReportDocument, ctx: EvalContext):
	states = bell_states()
	rows = []
	for b in states:
		rows.append(dict(
			label=b.label, state=format_ket(b.standard, ctx),
			schmidt_rank=b.schmidt_rank, exchange_parity=b.exchange_parity,
			decomposition=[f"{a.amplitude} |{rational_text(a.S)}, {rational_text(a.mu)}>" for a in b.decomposition]
		))
		doc["verdicts"] += [
			verdict(f"{b.label} has Schmidt rank 2", b.schmidt_rank == 2),
			verdict(f"{b.label} decomposition has total probability 1", total_probability(b.decomposition) == 1),
		]

	span = bell_span_dimension()
	expected = evaluate(parse("-1/sqrt(2) * (chi(1) x chi(-1) + chi(-1) x chi(1))"), ctx)
	hh_vv = next(b for b in states if b.label == "HH+VV")
	doc["results"]["bell"] = dict(axes="H along x, V along y", states=rows, span_dimension=span)
	doc["verdicts"] += [
		verdict("HH+VV equals -(chi(1) chi(-1) + chi(-1) chi(1))/sqrt(2)", hh_vv.standard == expected),
		verdict("HV-VH is antisymmetric", next(b for b in states if b.label == "HV-VH").exchange_parity == -1),
		verdict("the four Bell states span 4 of 9 dimensions", span == 4, detail=f"span {span}"),
	]

def cmd_paper_report(args: argparse.Namespace, config: Mapping) -> ReportDocument:
	'''
	The full two-photon reconstruction: operator identities, trial states
	with their expected failures, the superposition ansatz, the nine
	corrected states, classification, electrons and Bell states.
	'''

	doc = new_document("paper-report", {})
	ctx = EvalContext.of(1, 1)
	ops = total_operators(ProductSpace.of(1, 1))

	_photon_operator_section(doc)
	_candidate_section(doc)
	_ansatz_section(doc, ctx, ops)
	_states_section(doc, ctx, ops)
	_classification_section(doc)
	_electron_section(doc)
	_bell_section(doc, ctx)
	return finish_document(doc, config["timestamps"])

def build_parser() -> argparse.ArgumentParser:
	common = argparse.ArgumentParser(add_help=False)
	common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS, help="output format")
	common.add_argument("--basis", choices=("m", "standard_m", "cartesian"), default=argparse.SUPPRESS, help="single-particle basis of chi(m)")
	common.add_argument("--color", choices=("auto", "always", "never"), default=argparse.SUPPRESS, help="colour PASS and FAIL")
	common.add_argument("--timestamps", action="store_true", default=argparse.SUPPRESS, help="add generated_at to the report")

	parser = argparse.ArgumentParser(
		prog="spincouple",
		description="Exact coupling of two spins: coupled bases, Clebsch-Gordan coefficients and entanglement.",
		parents=[common]
	)
	sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

	def spins(p):
		p.add_argument("--j1", type=_halfint, default=Fraction(1), help="spin of particle 1 (default 1)")
		p.add_argument("--j2", type=_halfint, default=Fraction(1), help="spin of particle 2 (default 1)")

	p = sub.add_parser("couple", parents=[common], help="coupled basis of two spins")
	spins(p)
	p.add_argument("--float-fallback", action="store_true", help="couple in double precision when the exact path does not cover j1, j2")
	p.set_defaults(handler=cmd_couple)

	p = sub.add_parser("cg", parents=[common], help="Clebsch-Gordan coefficient")
	for name in ("j1", "m1", "j2", "m2", "J", "M"):
		p.add_argument(name, type=_halfint)
	p.set_defaults(handler=cmd_cg)

	p = sub.add_parser("verify", parents=[common], help="check an eigenstate claim")
	p.add_argument("expr", help="ket expression")
	p.add_argument("--S", type=_halfint, required=True)
	p.add_argument("--mu", type=_halfint, required=True)
	spins(p)
	p.set_defaults(handler=cmd_verify)

	p = sub.add_parser("entangle", parents=[common], help="Schmidt analysis of a state")
	p.add_argument("expr", nargs="?", help="ket expression")
	p.add_argument("--paper-state", choices=[s.label for s in PAIR_STATES + ELECTRON_STATES])
	p.add_argument("--bell", choices=list(bell_vectors()))
	spins(p)
	p.set_defaults(handler=cmd_entangle)

	p = sub.add_parser("paper-report", parents=[common], help="full two-photon reconstruction")
	p.set_defaults(handler=cmd_paper_report)
	return parser

def resolve_config(args: argparse.Namespace) -> DefaultConfig:
	'''Command line flags over the environment over the defaults.'''

	overrides = {
		name: getattr(args, name, None)
		for name in ("format", "basis", "color", "timestamps")
	}
	if overrides["basis"] is not None:
		overrides["basis"] = parse_basis(overrides["basis"])
	return DefaultConfig(overrides, load_config())

def execute(argv: Sequence[str]) -> tuple[ReportDocument, DefaultConfig]:
	'''Parse arguments and run one command without rendering.'''

	argv = [f" {a}" if NEGATIVE_FRACTION.fullmatch(a) else a for a in argv]
	args = build_parser().parse_args(argv)
	config = resolve_config(args)
	logger.info(f"Running {args.command}")
	return args.handler(args, config), config

def main(argv: Optional[Sequence[str]]=None) -> int:
	argv = sys.argv[1:] if argv is None else list(argv)
	try:
		doc, config = execute(argv)
		renderer = Renderer.find(config["format"])(config)
	except SystemExit as e:
		if e.code is None:
			return 0
		return e.code if isinstance(e.code, int) else 2
	except SpinCoupleError as e:
		logger.debug("Command failed", exc_info=True)
		print(f"spincouple: error: {e}", file=sys.stderr)
		return e.exit_code

	sys.stdout.write(renderer.render(doc))
	return 0 if doc["ok"] else 1
