"""Line-oriented text format for networks and states of belief.

Two document kinds share one syntax.  A network file declares nodes (in
world-enumeration order), their parents, and quantification rows::

    network grass
    oprops O1 O2 O3
    node P1
    node P3 parents P1
    objection P1 : false ; false          # for P1 ; against P1
    objection P3 | P1 : O1 ; !O1          # condition is a parent conjunction
    prob P1 : .5                          # chance against derived as 1 - p
    prob P3 | P1 : .9 ; .1                # or given explicitly

A state file spells out a world table directly::

    state birdfly
    oprops normal
    lprops bird fly
    world bird & fly : !normal

``#`` starts a comment; blank lines are ignored.  Objection conditions must
be conjunctions of parent literals covering every parent exactly once, and
``world`` rows must cover every domain atom exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .belief import ObjectionState
from .errors import FormulaSyntaxError, NetworkFormatError, UnknownAtomError
from .logic import (
    And,
    Atom,
    Not,
    Sentence,
    Vocabulary,
    World,
    parse_sentence,
    render,
)
from .network import CausalNetwork, OcnQuantification, ParentInstantiation
from .pcn import PcnQuantification


@dataclass(frozen=True, eq=False)
class NetworkDocument:
    """A parsed network file: the DAG plus whatever quantifications it carries."""

    name: str
    network: CausalNetwork
    objection_vocabulary: Vocabulary
    objections: OcnQuantification | None
    probabilities: PcnQuantification | None


@dataclass(frozen=True, eq=False)
class StateDocument:
    """A parsed state file: a ready world-table state of belief."""

    name: str
    state: ObjectionState


Document = NetworkDocument | StateDocument


def _strip(line: str) -> str:
    cut = line.find("#")
    if cut >= 0:
        line = line[:cut]
    return line.strip()


def _literal_signs(
    sentence: Sentence, line: int, what: str
) -> dict[Atom, bool]:
    """Flatten a conjunction of literals; reject anything else."""
    signs: dict[Atom, bool] = {}

    def walk(node: Sentence) -> None:
        if isinstance(node, And):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Atom):
            record(node, True)
        elif isinstance(node, Not) and isinstance(node.operand, Atom):
            record(node.operand, False)
        else:
            raise NetworkFormatError(
                f"{what} must be a conjunction of literals, got {render(sentence)!r}",
                line,
            )

    def record(atom: Atom, sign: bool) -> None:
        if atom in signs:
            raise NetworkFormatError(
                f"{what} mentions {atom.name!r} twice", line
            )
        signs[atom] = sign

    walk(sentence)
    return signs


class _NetworkBuilder:
    def __init__(self, name: str):
        self.name = name
        self.node_names: list[str] = []
        self.parents: dict[str, tuple[str, ...]] = {}
        self.objection_names: tuple[str, ...] | None = None
        self.objection_rows: dict[tuple[str, tuple[tuple[str, bool], ...]], tuple[Sentence, Sentence]] = {}
        self.prob_rows: dict[tuple[str, tuple[tuple[str, bool], ...]], tuple[float, float]] = {}

    def domain_vocabulary(self) -> Vocabulary:
        return Vocabulary.of(self.node_names, tag="L")

    def objection_vocabulary(self) -> Vocabulary:
        return Vocabulary.of(self.objection_names or (), tag="O")

    def add_node(self, rest: str, line: int) -> None:
        fields = rest.split()
        if not fields:
            raise NetworkFormatError("node line needs a name", line)
        name = fields[0]
        if name in self.node_names:
            raise NetworkFormatError(f"node {name!r} declared twice", line)
        parent_names: tuple[str, ...] = ()
        if len(fields) > 1:
            if fields[1] != "parents" or len(fields) < 3:
                raise NetworkFormatError(
                    "expected 'node <name> [parents <name>...]'", line
                )
            parent_names = tuple(fields[2:])
            for parent in parent_names:
                if parent not in self.node_names:
                    raise NetworkFormatError(
                        f"parent {parent!r} must be declared before node {name!r}",
                        line,
                    )
        self.node_names.append(name)
        self.parents[name] = parent_names

    def split_row(self, rest: str, line: int) -> tuple[str, str | None, str]:
        head, sep, payload = rest.partition(":")
        if not sep:
            raise NetworkFormatError("expected ':' in quantification row", line)
        head = head.strip()
        node, bar, condition = head.partition("|")
        node = node.strip()
        if node not in self.node_names:
            raise NetworkFormatError(f"row for undeclared node {node!r}", line)
        return node, (condition.strip() if bar else None), payload.strip()

    def instantiation(self, node: str, condition: str | None, line: int) -> tuple[str, tuple[tuple[str, bool], ...]]:
        declared = self.parents[node]
        if condition is None or condition == "":
            if declared:
                raise NetworkFormatError(
                    f"node {node!r} has parents; row needs a condition", line
                )
            return node, ()
        vocabulary = self.domain_vocabulary()
        try:
            sentence = parse_sentence(condition, vocabulary)
        except (FormulaSyntaxError, UnknownAtomError) as exc:
            raise NetworkFormatError(f"bad condition: {exc}", line) from exc
        signs = _literal_signs(sentence, line, "condition")
        by_name = {atom.name: sign for atom, sign in signs.items()}
        if set(by_name) != set(declared):
            raise NetworkFormatError(
                f"condition must cover exactly the parents of {node!r} "
                f"({', '.join(declared) or 'none'})",
                line,
            )
        return node, tuple((p, by_name[p]) for p in declared)

    def add_objection(self, rest: str, line: int) -> None:
        node, condition, payload = self.split_row(rest, line)
        key = self.instantiation(node, condition, line)
        if key in self.objection_rows:
            raise NetworkFormatError(f"duplicate objection row for {node!r}", line)
        for_text, sep, against_text = payload.partition(";")
        if not sep:
            raise NetworkFormatError(
                "objection row needs '<for> ; <against>'", line
            )
        vocabulary = self.objection_vocabulary()
        try:
            positive = parse_sentence(for_text.strip(), vocabulary)
            negative = parse_sentence(against_text.strip(), vocabulary)
        except (FormulaSyntaxError, UnknownAtomError) as exc:
            raise NetworkFormatError(f"bad objection: {exc}", line) from exc
        self.objection_rows[key] = (positive, negative)

    def add_prob(self, rest: str, line: int) -> None:
        node, condition, payload = self.split_row(rest, line)
        key = self.instantiation(node, condition, line)
        if key in self.prob_rows:
            raise NetworkFormatError(f"duplicate prob row for {node!r}", line)
        for_text, sep, against_text = payload.partition(";")
        try:
            positive = float(for_text.strip())
            negative = float(against_text.strip()) if sep else 1.0 - positive
        except ValueError as exc:
            raise NetworkFormatError(f"bad probability: {exc}", line) from exc
        self.prob_rows[key] = (positive, negative)

    def finish(self) -> NetworkDocument:
        if not self.node_names:
            raise NetworkFormatError("network declares no nodes")
        overlap = set(self.node_names) & set(self.objection_names or ())
        if overlap:
            raise NetworkFormatError(
                f"node and objection names overlap: {', '.join(sorted(overlap))}"
            )
        network = CausalNetwork(self.domain_vocabulary(), self.parents)
        objection_vocabulary = self.objection_vocabulary()

        def instantiate(key: tuple[str, tuple[tuple[str, bool], ...]]) -> ParentInstantiation:
            node, signs = key
            return ParentInstantiation(
                node, tuple((network.atom(p), sign) for p, sign in signs)
            )

        objections = None
        if self.objection_rows:
            objections = OcnQuantification(
                objection_vocabulary,
                {instantiate(k): v for k, v in self.objection_rows.items()},
            )
        probabilities = None
        if self.prob_rows:
            probabilities = PcnQuantification(
                {instantiate(k): v for k, v in self.prob_rows.items()}
            )
        return NetworkDocument(
            self.name, network, objection_vocabulary, objections, probabilities
        )


class _StateBuilder:
    def __init__(self, name: str):
        self.name = name
        self.domain_names: tuple[str, ...] | None = None
        self.objection_names: tuple[str, ...] | None = None
        self.rows: list[tuple[dict[Atom, bool], Sentence, int]] = []

    def domain_vocabulary(self) -> Vocabulary:
        return Vocabulary.of(self.domain_names or (), tag="L")

    def objection_vocabulary(self) -> Vocabulary:
        return Vocabulary.of(self.objection_names or (), tag="O")

    def add_world(self, rest: str, line: int) -> None:
        if self.domain_names is None:
            raise NetworkFormatError("'lprops' must come before world rows", line)
        world_text, sep, objection_text = rest.partition(":")
        if not sep:
            raise NetworkFormatError("world row needs '<world> : <objection>'", line)
        try:
            world_sentence = parse_sentence(world_text.strip(), self.domain_vocabulary())
            objection = parse_sentence(objection_text.strip(), self.objection_vocabulary())
        except (FormulaSyntaxError, UnknownAtomError) as exc:
            raise NetworkFormatError(f"bad world row: {exc}", line) from exc
        signs = _literal_signs(world_sentence, line, "world")
        if {atom.name for atom in signs} != set(self.domain_names):
            raise NetworkFormatError(
                "world must assign every domain atom exactly once", line
            )
        self.rows.append((signs, objection, line))

    def finish(self) -> StateDocument:
        if self.domain_names is None:
            raise NetworkFormatError("state file declares no 'lprops'")
        vocabulary = self.domain_vocabulary()
        entries: dict[World, Sentence] = {}
        for signs, objection, line in self.rows:
            bits = tuple(signs[atom] for atom in vocabulary.atoms)
            world = World(vocabulary, bits)
            if world in entries:
                raise NetworkFormatError(f"duplicate world row: {world}", line)
            entries[world] = objection
        state = ObjectionState.from_world_table(entries, self.objection_vocabulary())
        return StateDocument(self.name, state)


def loads(text: str) -> Document:
    """Parse a document from text; see the module docstring for the syntax."""
    builder: _NetworkBuilder | _StateBuilder | None = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        parts = line.split(None, 1)
        keyword = parts[0]
        rest = parts[1].strip() if len(parts) > 1 else ""
        if builder is None:
            if keyword == "network":
                if not rest:
                    raise NetworkFormatError("network line needs a name", number)
                builder = _NetworkBuilder(rest)
            elif keyword == "state":
                if not rest:
                    raise NetworkFormatError("state line needs a name", number)
                builder = _StateBuilder(rest)
            else:
                raise NetworkFormatError(
                    "file must start with 'network <name>' or 'state <name>'", number
                )
            continue
        if keyword == "oprops":
            if builder.objection_names is not None:
                raise NetworkFormatError("'oprops' given twice", number)
            builder.objection_names = tuple(rest.split())
        elif keyword == "node" and isinstance(builder, _NetworkBuilder):
            builder.add_node(rest, number)
        elif keyword == "objection" and isinstance(builder, _NetworkBuilder):
            builder.add_objection(rest, number)
        elif keyword == "prob" and isinstance(builder, _NetworkBuilder):
            builder.add_prob(rest, number)
        elif keyword == "lprops" and isinstance(builder, _StateBuilder):
            if builder.domain_names is not None:
                raise NetworkFormatError("'lprops' given twice", number)
            builder.domain_names = tuple(rest.split())
        elif keyword == "world" and isinstance(builder, _StateBuilder):
            builder.add_world(rest, number)
        else:
            raise NetworkFormatError(f"unknown directive {keyword!r}", number)
    if builder is None:
        raise NetworkFormatError("empty document")
    return builder.finish()


def load_path(path: str | Path) -> Document:
    """Load a document from a file path."""
    return loads(Path(path).read_text(encoding="utf-8"))


def dump_state(state: ObjectionState, name: str = "state") -> str:
    """Serialize a state as a loadable world-table document."""
    lines = [f"state {name}"]
    lines.append("oprops " + " ".join(state.objection_vocabulary.names))
    lines.append("lprops " + " ".join(state.domain_vocabulary.names))
    for world in state.worlds():
        lines.append(f"world {world} : {render(state.objection_at(world))}")
    return "\n".join(lines) + "\n"


def bundled_path(name: str) -> Path:
    """Path of a data file shipped with the package (grass.ocn and friends)."""
    return Path(str(resources.files("objections").joinpath("data", name)))
