"""
Composite networks built from frozen (pre-trained) and trainable (non-instantiated) components. The package solves
the optimal linear gluing layer in closed form, builds the scaled activation construction that lets a non-linear
gluing layer track the linear optimum, grows networks in width and depth, trains them with SGD and checks the
no-worse probability bounds with seeded Monte Carlo runs.
"""
