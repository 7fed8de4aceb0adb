# Generated by qumodel. Package Domain.Results
