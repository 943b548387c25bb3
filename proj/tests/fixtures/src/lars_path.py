def lars_path(X, y, Gram=None, max_iter=500):
    """Compute Least Angle Regression or Lasso path using the LARS algorithm.

    Parameters
    ----------
    X : None or ndarray of shape (n_samples, n_features)
        Input data. Note that if X is None then the Gram matrix must be
        specified, i.e., cannot be None or False.
    y : None or ndarray of shape (n_samples,)
        Input targets.
    Gram : None, "auto" or ndarray of shape (n_features, n_features)
        Precomputed Gram matrix, if X is precomputed.
    max_iter : int, default=500
        Maximum number of iterations to perform.
    """
    if X is None and Gram is not None:
        raise ValueError("X cannot be None if Gram is not None. Use lars_path_gram to avoid passing X and y.")
