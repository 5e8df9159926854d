"""
Package containing the evaluation metrics of the lab.
"""

# Expose classes in modules for easy access
from evaluation.metrics import EvalResult
from evaluation.metrics import EvaluationError
from evaluation.metrics import auc
from evaluation.metrics import roc_points
from evaluation.metrics import confusion_at
from evaluation.metrics import evaluate
