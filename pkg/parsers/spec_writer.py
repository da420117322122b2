"""
Spec-file printer: the inverse of parse_spec
"""

from core.logging_setup import logger


def _presentation_lines(pres):
    lines = [f"cell {cell}" for cell in pres.cells]
    lines += [f"gen {g.name} : {g.dom} -> {g.cod}" for g in pres.gens.values()]
    lines.append("precedence " + " < ".join(pres.precedence))
    lines += [f"rule {r.name} : {r.lhs} => {r.rhs}" for r in pres.rules.values()]
    lines += [f"defrule {r.name} : {r.lhs} => {r.rhs} = {r.body}"
              for r in pres.derived_rules.values()]
    lines += [f"eq {e.name} : {e.left} = {e.right}" for e in pres.equations.values()]
    lines += [f"universe {u.name} = {u.pattern}" for u in pres.universes.values()]
    return lines


def _task_lines(task):
    args = task.args
    if task.kind == "confluence":
        return ["check confluence"]
    if task.kind == "normalize":
        return [f"normalize {args['string']}"]
    if task.kind == "terminal":
        line = f"check terminal {args['candidate']} in {args['universe']}"
        if args.get("rules"):
            line += " rules " + ",".join(args["rules"])
        if args.get("maxlen") is not None:
            line += f" maxlen {args['maxlen']}"
        return [line]
    if task.kind == "equiv":
        return [f"check equiv {args['left']} = {args['right']}"]
    if task.kind == "laws":
        if args["structure"] == "monad":
            return [f"check laws monad {args['t']} {args['mu']} {args['eta']}"]
        return [f"check laws adjunction {args['f']} {args['g']} {args['eta']} {args['eps']}"]
    diagram = args["diagram"]
    lines = [f"check diagram {diagram.name} {{"]
    lines += [f"  node {name} = {s}" for name, s in diagram.nodes.items()]
    lines += [f"  edge {u} -> {v} : {d}" for u, v, d in diagram.edges]
    lines += [f"  source {diagram.source}", f"  sink {diagram.sink}", "}"]
    return lines


def format_spec(spec):
    """Spec-file text for a SpecFile (declarations first, then tasks)"""
    lines = _presentation_lines(spec.presentation)
    for task in spec.tasks:
        lines += _task_lines(task)
    logger.debug(f"Formatted {spec.presentation.name}: {len(lines)} lines")
    return "\n".join(lines) + "\n"
