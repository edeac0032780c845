'''
Reference states of two spin-1 photons and two spin-1/2 electrons, written
in the ket language, together with the trial states a naive construction
produces. Labels S1..S6 are the symmetric (S = 2, 0) states and A1..A3 the
antisymmetric (S = 1) ones, in that order.
'''

from fractions import Fraction

from .typings import NamedTuple, Optional

class CatalogState(NamedTuple):
	'''A labelled coupled state |S, mu>.'''

	label: str
	S: Fraction
	mu: Fraction
	text: str
	'''Ket-language expression of the state.'''

class Candidate(NamedTuple):
	'''A trial state to be checked against S^2 and Sz.'''

	label: str
	S: Fraction
	mu: Fraction
	text: str
	expected_pass: bool
	'''Whether the trial really is the claimed eigenstate.'''

class AnsatzCase(NamedTuple):
	'''Superposition of candidate product-state sums solved for one (S, mu).'''

	label: str
	S: Fraction
	mu: Fraction
	candidates: tuple[str, ...]
	ratio: Fraction
	'''Expected ratio of the first coefficient to the second.'''

def _state(label: str, S: int, mu: int, text: str) -> CatalogState:
	return CatalogState(label, Fraction(S), Fraction(mu), text)

PAIR_STATES = (
	_state("S1", 2, 2, "chi(1) x chi(1)"),
	_state("S2", 2, 1, "1/sqrt(2) * (chi(0) x chi(1) + chi(1) x chi(0))"),
	_state("S3", 2, 0, "2/sqrt(6) * chi(0) x chi(0) + 1/sqrt(6) * (chi(1) x chi(-1) + chi(-1) x chi(1))"),
	_state("S4", 2, -1, "1/sqrt(2) * (chi(0) x chi(-1) + chi(-1) x chi(0))"),
	_state("S5", 2, -2, "chi(-1) x chi(-1)"),
	_state("S6", 0, 0, "1/sqrt(3) * chi(0) x chi(0) - 1/sqrt(3) * (chi(1) x chi(-1) + chi(-1) x chi(1))"),
	_state("A1", 1, 1, "1/sqrt(2) * (chi(0) x chi(1) - chi(1) x chi(0))"),
	_state("A2", 1, 0, "1/sqrt(2) * (chi(1) x chi(-1) - chi(-1) x chi(1))"),
	_state("A3", 1, -1, "1/sqrt(2) * (chi(0) x chi(-1) - chi(-1) x chi(0))"),
)
'''The nine coupled two-photon states.'''

SCHMIDT_RANKS = dict(S1=1, S2=2, S3=3, S4=2, S5=1, S6=3, A1=2, A2=2, A3=2)
'''Schmidt rank of each two-photon state; only S1 and S5 are products.'''

CANDIDATES = tuple(
	Candidate(s.label, s.S, s.mu, s.text, True) for s in PAIR_STATES[:2]
) + (
	Candidate("S3 trial", Fraction(2), Fraction(0), "1/sqrt(2) * (chi(1) x chi(-1) + chi(-1) x chi(1))", False),
) + tuple(
	Candidate(s.label, s.S, s.mu, s.text, True) for s in PAIR_STATES[2:5]
) + (
	Candidate("S6 trial", Fraction(0), Fraction(0), "chi(0) x chi(0)", False),
) + tuple(
	Candidate(s.label, s.S, s.mu, s.text, True) for s in PAIR_STATES[5:]
)
'''Trial states in construction order; the two symmetrized guesses for mu = 0 are not eigenstates.'''

ANSATZ_CANDIDATES = ("chi(0) x chi(0)", "chi(1) x chi(-1) + chi(-1) x chi(1)")

ANSATZ_CASES = (
	AnsatzCase("S3", Fraction(2), Fraction(0), ANSATZ_CANDIDATES, Fraction(2)),
	AnsatzCase("S6", Fraction(0), Fraction(0), ANSATZ_CANDIDATES, Fraction(-1)),
)
'''a chi(0) chi(0) + b (chi(1) chi(-1) + chi(-1) chi(1)) solved for S = 2 and S = 0.'''

ELECTRON_STATES = (
	CatalogState("E+", Fraction(1), Fraction(0), "1/sqrt(2) * (chi(1/2) x chi(-1/2) + chi(-1/2) x chi(1/2))"),
	CatalogState("E-", Fraction(0), Fraction(0), "1/sqrt(2) * (chi(1/2) x chi(-1/2) - chi(-1/2) x chi(1/2))"),
)
'''Two-electron triplet and singlet with mu = 0.'''

def find_state(label: str) -> Optional[CatalogState]:
	'''Photon or electron state by label, None if unknown.'''
	for state in PAIR_STATES + ELECTRON_STATES:
		if state.label == label:
			return state
	return None

def state_spins(state: CatalogState) -> tuple[Fraction, Fraction]:
	'''(j1, j2) of the space a catalog state lives in.'''
	if state in ELECTRON_STATES:
		return Fraction(1, 2), Fraction(1, 2)
	return Fraction(1), Fraction(1)
