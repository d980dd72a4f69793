# coding: utf-8

# # Clustering a STRING-style interaction file
#
# STRING distributes links as whitespace-separated
# `protein1 protein2 combined_score` rows with scores in 0..1000.
# `load_edge_list(..., format="string-tsv")` rescales them to (0, 1] and
# uses them as edge weights.
#
# `data/toy_string_links.txt` is a small synthetic file, not a STRING
# download. It plants three modules and joins them with weak links.

# In[1]:

from pathlib import Path

from mclflow import MclConfig, connected_components, extract_clusters, load_edge_list, run
from mclflow.clusters import size_histogram

here = Path(__file__).resolve().parent
g = load_edge_list(here / "data" / "toy_string_links.txt", format="string-tsv")
print(g.n, "proteins,", g.n_edges, "links,", len(connected_components(g)), "component(s)")


# In[2]:

res = run(g, MclConfig(expansion=2, inflation=2.0))
clustering = extract_clusters(res.final_matrix)
for members in clustering.clusters:
    print(sorted(g.labels[v].split(".", 1)[1] for v in members))


# In[3]:

print("size histogram:", size_histogram(clustering).bins)


# The candidate gene list in `data/covid19_candidate_genes.txt` is the
# natural seed for a real query against the STRING API; download the
# links for those genes and point this notebook at that file instead.
