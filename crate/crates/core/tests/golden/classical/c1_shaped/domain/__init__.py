# Generated by qumodel. Package Domain
