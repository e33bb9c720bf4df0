"""
Precedence graph of a square max-plus matrix and Karp's maximum cycle mean.
"""
from fractions import Fraction
import networkx as nx
import logging
log = logging.getLogger(__name__)

def digraph(data):
    """
    Digraph with an edge i -> j of weight A_ij for every finite entry.
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(data)))
    for i, row in enumerate(data):
        for j, value in enumerate(row):
            if value is not None:
                graph.add_edge(i, j, weight=value)
    return graph

def cyclic_components(graph):
    """
    Strongly connected components that carry at least one cycle, each as a
    sorted node list.
    """
    components = []
    for component in nx.strongly_connected_components(graph):
        nodes = sorted(component)
        if len(nodes) > 1 or graph.has_edge(nodes[0], nodes[0]):
            components.append(nodes)
    return sorted(components)

def karp_component(graph, nodes):
    """
    Maximum cycle mean of a strongly connected node set.
    """
    size = len(nodes)
    index = dict((v, k) for k, v in enumerate(nodes))

    # walks[k][v]: heaviest walk of exactly k edges from nodes[0] to v
    walks = [[None] * size for _ in range(size + 1)]
    walks[0][0] = Fraction(0)

    for k in range(1, size + 1):
        previous, current = walks[k - 1], walks[k]
        for u in nodes:
            base = previous[index[u]]
            if base is None:
                continue
            for v in graph.successors(u):
                if v not in index:
                    continue
                value = base + graph[u][v]['weight']
                slot = index[v]
                if current[slot] is None or value > current[slot]:
                    current[slot] = value

    best = None
    for v in range(size):
        last = walks[size][v]
        if last is None:
            continue

        worst = None
        for k in range(size):
            if walks[k][v] is None:
                continue
            mean = (last - walks[k][v]) / (size - k)
            if worst is None or mean < worst:
                worst = mean

        if worst is not None and (best is None or worst > best):
            best = worst
    return best

def karp(data):
    """
    Maximum cycle mean of the max-plus matrix given as raw rows, or None if
    the graph of finite entries is acyclic.
    """
    graph = digraph(data)

    best = None
    for nodes in cyclic_components(graph):
        value = karp_component(graph, nodes)
        log.debug('component %s has cycle mean %s' % (nodes, value))
        if best is None or value > best:
            best = value
    return best
