# coding: utf-8

# # A full sweep with the command line entry point
#
# `mclflow.cli.main` takes the same argument list as the `mclflow` script,
# so a notebook can drive it directly. The sweep generates one graph per
# (size, seed), clusters it with each algorithm, and writes a summary CSV.

# In[1]:

import csv
import tempfile
from pathlib import Path

from mclflow.cli import main

out = Path(tempfile.mkdtemp()) / "sweep"
status = main([
    "sweep", "--sizes", "150:200:50", "--seeds", "1,2",
    "--algorithms", "mcl,vimcl", "--expansion", "2",
    "--out-dir", str(out),
])
print("exit status", status)


# In[2]:

with open(out / "summary.csv") as fh:
    for row in csv.DictReader(fh):
        print(row["n"], row["seed"], row["algorithm"], row["iterations"],
              row["n_clusters"], row["dunn"])


# ## Re-validating one cell with hop distances
#
# The sweep scores clusterings with Euclidean distances between node
# positions. `validate` can rescore any clusters file against graph hops.

# In[3]:

main([
    "validate",
    "--clusters", str(out / "clusters_n150_s1_mcl.tsv"),
    "--graph", str(out / "graph_n150_s1.json"),
    "--distance", "hop",
])
# prints n_clusters,min_inter,max_intra,dunn
