# Plane graphs, colourings, cycles and synthesis records
