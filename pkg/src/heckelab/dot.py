"""Graphviz rendering of an optimizer trace."""


def _node_label(splitting):
    return "(" + ", ".join(str(a) for a in splitting) + ")"


def trace_to_dot(start, trace, final=None):
    """Digraph with one node per visited splitting type.

    Hecke steps are solid edges.  When the final splitting is a nonzero
    balanced type, a dashed ``twist`` edge leads to its normalized
    representative ``(0, ..., 0)``.
    """
    lines = ["digraph hecke_trace {", "  rankdir=LR;", "  node [shape=box];"]
    nodes = [start] + [step.splitting_after for step in trace]
    for i, s in enumerate(nodes):
        lines.append(f'  n{i} [label="{_node_label(s)}\\nphi={s.phi}"];')
    for i, step in enumerate(trace):
        lines.append(
            f'  n{i} -> n{i + 1} [label="Hecke k={step.top_blocks} (rank {step.sub_rank})"];'
        )
    last = final if final is not None else nodes[-1]
    if last.phi == 0 and last.exponents[0] != 0:
        k = last.exponents[0]
        normal = last.shifted(-k)
        lines.append(f'  n{len(nodes)} [label="{_node_label(normal)}\\nphi=0", style=dashed];')
        lines.append(f'  n{len(nodes) - 1} -> n{len(nodes)} [label="twist k={k}", style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
