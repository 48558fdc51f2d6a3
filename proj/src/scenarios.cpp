// assembled after the module layers
