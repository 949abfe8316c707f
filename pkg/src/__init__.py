# gevmiss - Missingness-adjusted GEV block maxima
