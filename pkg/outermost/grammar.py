"""
"""
import pyparsing as pp
from pyparsing import pyparsing_common as ppc
from . import notation as el

S = pp.Suppress
Opt = pp.Optional
ZM = pp.ZeroOrMore
OM = pp.OneOrMore
comma = pp.Suppress(',')
lb = pp.Suppress('[')
rb = pp.Suppress(']')
lp = pp.Suppress('(')
rp = pp.Suppress(')')
slash = pp.Suppress('/')
plus = pp.Suppress(pp.one_of('+ ⊕'))
integer = ppc.signed_integer
natural = pp.Word(pp.nums).set_parse_action(pp.token_map(int))

# lattices
row = pp.Group(lb + pp.DelimitedList(integer) + rb)
gram_literal = (lb + row + ZM(comma + row) + rb).set_parse_action(el.GramLiteral)
rank1 = (lb + integer + rb).set_parse_action(el.Rank1)
diag = (S(pp.Keyword('diag')) + lp + pp.DelimitedList(integer) + rp).set_parse_action(el.Diag)
hyperbolic = pp.Keyword('U').set_parse_action(el.Hyperbolic)
root_lattice = pp.Regex(r'[ADE][1-9][0-9]*\b').set_parse_action(el.RootLattice)

lattice = pp.Forward()
atom = pp.Forward()
scaled = (lb + integer + rb + atom).set_parse_action(el.Scaled)
atom <<= gram_literal | diag | hyperbolic | root_lattice | (lp + lattice + rp) | scaled | rank1
lattice <<= (atom + ZM(plus + atom)).set_parse_action(el.Sum)

# angle sets
pi = S(pp.Literal('pi') | pp.Literal('π'))
angle = pi + slash + natural
angle_tuple = lp + pp.DelimitedList(angle) + rp
angles = (angle_tuple | OM(natural)).set_parse_action(el.angle_set)
