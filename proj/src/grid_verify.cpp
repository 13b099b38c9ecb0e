// placeholder, filled in with the grid verification
