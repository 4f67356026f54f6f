"""An event-indexed object calculus over finite universes.

Individuals are partial maps from events to states. Terms are evaluated at
an event or globally over all of them, concepts are built over event sets,
comprehension stacks concepts into layers, and scripts drive a store of live
individuals from event to event.
"""

from .concepts import (TypeFree, Typed, build_concept, interchange_check, individual_concept,
                       recover_individual)
from .errors import (DepthExceeded, Improper, NotApplicable, ParseError, ScriptError,
                     SortError, TooLarge, Undefined, ValidationError, VdcError)
from .evaluator import (EvalContext, check_eta, eval_at, eval_comprehension, eval_description,
                        eval_global, eval_in_index, eval_via_epsilon)
from .formats import load_script, load_universe, parse_script, parse_universe, parse_value
from .layers import LayeredStore, check_layer_taxonomy, comprehend_layer, layer_role
from .parser import parse_sort, parse_term
from .scripts import EventStep, Script, StoreState, apply_event, run_script, trace_individual
from .sorts import sort_check
from .syntax import show
from .universe import (Concept, Individual, TypeDenotation, Universe, VariableDomain,
                       apply_individual, check_taxonomy, enumerate_domain, make_individual)
from .values import Atom, Bool, FinSet, Graph, Pair

__version__ = "0.1.0"
