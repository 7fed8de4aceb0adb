# Generated by qumodel. Package Classical.Persistence
