"""
Built-in presentations: monad, composite-monad, adjunction and
two-monads-intro, each written in the spec-file grammar
"""

from core.constants import PRESET_NAMES
from core.errors import RewriteCheckerError
from core.logging_setup import logger


MONAD = """\
# a monad (T, mu, eta) on a single 0-cell
cell A
gen T : A -> A
rule mu : T T => T
rule eta : 1_A => T
eq assoc : { () mu (T) ; () mu () } = { (T) mu () ; () mu () }
eq unitL : { () eta (T) ; () mu () } = id(T)
eq unitR : { (T) eta () ; () mu () } = id(T)
universe Tstar = T*
universe Tplus = T+
check confluence
check laws monad T mu eta
check terminal T in Tstar maxlen 7
check terminal T in Tplus rules mu maxlen 7
"""

_COMPOSITE = """\
cell A
gen {P} : A -> A
gen {T} : A -> A
precedence {P} < {T}
rule mu{P} : {P} {P} => {P}
rule eta{P} : 1_A => {P}
rule mu{T} : {T} {T} => {T}
rule eta{T} : 1_A => {T}
rule theta : {T} {P} => {P} {T}
eq assoc{P} : {{ () mu{P} ({P}) ; () mu{P} () }} = {{ ({P}) mu{P} () ; () mu{P} () }}
eq unitL{P} : {{ () eta{P} ({P}) ; () mu{P} () }} = id({P})
eq unitR{P} : {{ ({P}) eta{P} () ; () mu{P} () }} = id({P})
eq assoc{T} : {{ () mu{T} ({T}) ; () mu{T} () }} = {{ ({T}) mu{T} () ; () mu{T} () }}
eq unitL{T} : {{ () eta{T} ({T}) ; () mu{T} () }} = id({T})
eq unitR{T} : {{ ({T}) eta{T} () ; () mu{T} () }} = id({T})
eq theta_mu{P} : {{ () theta ({P}) ; ({P}) theta () ; () mu{P} ({T}) }} = {{ ({T}) mu{P} () ; () theta () }}
eq theta_mu{T} : {{ ({T}) theta () ; () theta ({T}) ; ({P}) mu{T} () }} = {{ () mu{T} ({P}) ; () theta () }}
eq theta_eta{P} : {{ ({T}) eta{P} () ; () theta () }} = {{ () eta{P} ({T}) }}
eq theta_eta{T} : {{ () eta{T} ({P}) ; () theta () }} = {{ ({P}) eta{T} () }}
defrule mu{P}{T} : {P} {T} {P} {T} => {P} {T} = {{ ({P}) theta ({T}) ; ({P} {P}) mu{T} () ; () mu{P} ({T}) }}
defrule eta{P}{T} : 1_A => {P} {T} = {{ () eta{T} () ; () eta{P} ({T}) }}
universe {P}{T}star = ({P} | {T})*
universe {P}{T}pow = ({P} {T})*
"""

COMPOSITE_MONAD = "# composite monad PT from a distributive law theta : TP => PT\n" + \
    _COMPOSITE.format(P="P", T="T") + """\
check confluence
check laws monad P T muPT etaPT
check terminal P T in PTstar maxlen 6
check terminal P T in PTpow rules muPT,etaPT maxlen 6
check equiv { () etaT () ; () etaP (T) } = { () etaP () ; (P) etaT () }
"""

ADJUNCTION = """\
# an adjunction F -| G with unit eta and counit eps
cell C
cell D
gen F : C -> D
gen G : D -> C
rule eta : 1_C => G F
rule eps : F G => 1_D
eq triangleG : { () eta (G) ; (G) eps () } = id(G)
eq triangleF : { (F) eta () ; () eps (F) } = id(F)
universe Fwords = F (G F)*
universe Gwords = G (F G)*
check confluence
check laws adjunction F G eta eps
check terminal F in Fwords maxlen 7
check terminal G in Gwords maxlen 7
"""

TWO_MONADS_INTRO = "# composite T2 T1 and the two-monad verification diagram\n" + \
    _COMPOSITE.format(P="T2", T="T1") + """\
check confluence
check diagram intro {
  node n00 = T1 T1 T2
  node n01 = T1 T2 T1 T2 T1
  node n02 = T1 T2 T1
  node n10 = T1 T1 T2 T1
  node n11 = T2 T1 T2 T1 T2 T1
  node n12 = T2 T1 T2 T1
  node n20 = T1 T2 T1
  node n21 = T2 T1 T2 T1
  node n22 = T2 T1
  edge n00 -> n01 : { (T1) etaT2 (T1 T2) ; (T1 T2 T1 T2) etaT1 () }
  edge n00 -> n10 : { (T1 T1 T2) etaT1 () }
  edge n01 -> n02 : { (T1) muT2T1 () }
  edge n01 -> n11 : { () etaT2 (T1 T2 T1 T2 T1) }
  edge n02 -> n12 : { () etaT2 (T1 T2 T1) }
  edge n10 -> n11 : { () etaT2 (T1 T1 T2 T1) ; (T2 T1) etaT2 (T1 T2 T1) }
  edge n10 -> n20 : { () muT1 (T2 T1) }
  edge n11 -> n12 : { (T2 T1) muT2T1 () }
  edge n11 -> n21 : { () muT2T1 (T2 T1) }
  edge n12 -> n22 : { () muT2T1 () }
  edge n20 -> n21 : { () etaT2 (T1 T2 T1) }
  edge n21 -> n22 : { () muT2T1 () }
  source n00
  sink n22
}
"""

PRESET_TEXTS = {
    "monad": MONAD,
    "composite-monad": COMPOSITE_MONAD,
    "adjunction": ADJUNCTION,
    "two-monads-intro": TWO_MONADS_INTRO,
}


def preset_text(name):
    """Spec-file source of a built-in preset"""
    if name not in PRESET_TEXTS:
        logger.error(f"Unknown preset {name!r}; known presets: {', '.join(PRESET_NAMES)}")
        raise RewriteCheckerError(f"unknown preset {name!r}")
    return PRESET_TEXTS[name]


def preset_spec(name):
    """Parsed SpecFile (presentation and tasks) of a built-in preset"""
    from parsers.spec_parser import parse_spec
    logger.info(f"Loading preset {name}")
    return parse_spec(preset_text(name), name=name)


def preset(name):
    """Presentation of a built-in preset"""
    return preset_spec(name).presentation
